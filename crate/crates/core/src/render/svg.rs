//! Minimal deterministic SVG writer.

use std::fmt::Write as _;

/// Formats a coordinate with exactly four decimals; negative zero prints
/// as zero.
pub fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            // control characters are not allowed in XML 1.0
            c if (c as u32) < 0x20 && !matches!(c, '\t' | '\n' | '\r') => {}
            c => out.push(c),
        }
    }
    out
}

#[derive(Debug, Clone)]
pub(crate) enum Attr {
    Num(f64),
    Text(String),
}

impl From<f64> for Attr {
    fn from(v: f64) -> Self {
        Attr::Num(v)
    }
}

impl From<&str> for Attr {
    fn from(v: &str) -> Self {
        Attr::Text(v.to_string())
    }
}

impl From<String> for Attr {
    fn from(v: String) -> Self {
        Attr::Text(v)
    }
}

/// Append-only SVG document. Attributes are written in lexicographic name
/// order regardless of the order they are supplied in.
pub(crate) struct Svg {
    buf: String,
    depth: usize,
}

impl Svg {
    pub fn new(width: f64, height: f64) -> Self {
        let mut buf = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            buf,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"monospace\">",
            w = num(width),
            h = num(height)
        );
        Self { buf, depth: 1 }
    }

    fn open_tag(&mut self, name: &str, attrs: Vec<(&str, Attr)>) {
        let mut attrs = attrs;
        attrs.sort_by(|a, b| a.0.cmp(b.0));
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
        self.buf.push('<');
        self.buf.push_str(name);
        for (k, v) in attrs {
            let v = match v {
                Attr::Num(x) => num(x),
                Attr::Text(t) => escape(&t),
            };
            let _ = write!(self.buf, " {k}=\"{v}\"");
        }
    }

    pub fn leaf(&mut self, name: &str, attrs: Vec<(&str, Attr)>) {
        self.open_tag(name, attrs);
        self.buf.push_str("/>\n");
    }

    pub fn text(&mut self, attrs: Vec<(&str, Attr)>, content: &str) {
        self.open_tag("text", attrs);
        let _ = writeln!(self.buf, ">{}</text>", escape(content));
    }

    pub fn group(&mut self, attrs: Vec<(&str, Attr)>) {
        self.open_tag("g", attrs);
        self.buf.push_str(">\n");
        self.depth += 1;
    }

    pub fn end_group(&mut self) {
        self.depth -= 1;
        for _ in 0..self.depth {
            self.buf.push_str("  ");
        }
        self.buf.push_str("</g>\n");
    }

    pub fn finish(mut self) -> String {
        debug_assert_eq!(self.depth, 1, "unbalanced groups");
        self.buf.push_str("</svg>\n");
        self.buf
    }
}

pub(crate) fn points(pts: &[(f64, f64)]) -> String {
    pts.iter()
        .map(|&(x, y)| format!("{},{}", num(x), num(y)))
        .collect::<Vec<_>>()
        .join(" ")
}
