use std::fmt;
use std::str::FromStr;

use super::viridis::VIRIDIS;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

pub const WHITE: Rgb = Rgb::new(255, 255, 255);
pub const BLACK: Rgb = Rgb::new(0, 0, 0);

impl Rgb {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Self { r, g, b }
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    pub fn to_hex(self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.r, self.g, self.b)
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

// A handful of R color names used by typical superheat calls.
const NAMED: &[(&str, [u8; 3])] = &[
    ("black", [0, 0, 0]),
    ("white", [255, 255, 255]),
    ("red", [255, 0, 0]),
    ("green", [0, 255, 0]),
    ("blue", [0, 0, 255]),
    ("yellow", [255, 255, 0]),
    ("orange", [255, 165, 0]),
    ("purple", [160, 32, 240]),
    ("gray", [190, 190, 190]),
    ("grey", [190, 190, 190]),
    ("grey35", [89, 89, 89]),
    ("gray35", [89, 89, 89]),
    ("grey50", [127, 127, 127]),
    ("gray50", [127, 127, 127]),
    ("grey90", [229, 229, 229]),
    ("gray90", [229, 229, 229]),
    ("slategray4", [108, 123, 139]),
    ("slategrey4", [108, 123, 139]),
    ("steelblue", [70, 130, 180]),
    ("darkgreen", [0, 100, 0]),
    ("darkred", [139, 0, 0]),
];

impl FromStr for Rgb {
    type Err = Error;

    /// `#RRGGBB`, `#RGB`, `#RRGGBBAA` (alpha ignored) or an R color name.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("color", format!("{s:?}"));
        let t = s.trim();
        if let Some(hex) = t.strip_prefix('#') {
            let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
            return match hex.len() {
                6 | 8 if hex.is_ascii() => Ok(Rgb::new(byte(0)?, byte(2)?, byte(4)?)),
                3 if hex.is_ascii() => {
                    let nib = |i: usize| {
                        u8::from_str_radix(&hex[i..i + 1], 16)
                            .map(|v| v * 17)
                            .map_err(|_| bad())
                    };
                    Ok(Rgb::new(nib(0)?, nib(1)?, nib(2)?))
                }
                _ => Err(bad()),
            };
        }
        let lower = t.to_ascii_lowercase();
        NAMED
            .iter()
            .find(|(name, _)| *name == lower)
            .map(|(_, [r, g, b])| Rgb::new(*r, *g, *b))
            .ok_or_else(bad)
    }
}

/// Built-in palettes by name: `viridis` (256 anchors) and the 5-class
/// ColorBrewer `BuPu` and `RdBu`.
pub fn named_palette(name: &str) -> Option<Vec<Rgb>> {
    let hex = |xs: &[&str]| {
        xs.iter()
            .map(|h| h.parse().expect("valid literal"))
            .collect()
    };
    match name {
        "viridis" => Some(VIRIDIS.iter().map(|&[r, g, b]| Rgb::new(r, g, b)).collect()),
        "BuPu" => Some(hex(&[
            "#edf8fb", "#b3cde3", "#8c96c6", "#8856a7", "#810f7c",
        ])),
        "RdBu" => Some(hex(&[
            "#ca0020", "#f4a582", "#f7f7f7", "#92c5de", "#0571b0",
        ])),
        "greys" => Some(vec![WHITE, BLACK]),
        _ => None,
    }
}

pub fn viridis() -> Vec<Rgb> {
    named_palette("viridis").expect("built in")
}

/// Piecewise-linear map from values to palette colors.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorScale {
    palette: Vec<Rgb>,
    anchors: Vec<f64>,
    na_color: Rgb,
    domain: (f64, f64),
}

impl ColorScale {
    /// Anchors spread evenly over `domain`.
    pub fn new(palette: Vec<Rgb>, domain: (f64, f64), na_color: Rgb) -> Result<Self> {
        if palette.len() < 2 {
            return Err(Error::invalid("palette", "needs at least 2 colors"));
        }
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::invalid("color domain", format!("({lo}, {hi})")));
        }
        let last = (palette.len() - 1) as f64;
        let anchors = (0..palette.len())
            .map(|i| {
                if i + 1 == palette.len() {
                    hi
                } else {
                    lo + (hi - lo) * (i as f64 / last)
                }
            })
            .collect();
        Ok(Self {
            palette,
            anchors,
            na_color,
            domain,
        })
    }

    /// Palette colors pinned at explicit, strictly ascending break values.
    pub fn with_breaks(palette: Vec<Rgb>, breaks: Vec<f64>, na_color: Rgb) -> Result<Self> {
        if palette.len() < 2 {
            return Err(Error::invalid("palette", "needs at least 2 colors"));
        }
        if breaks.len() != palette.len() {
            return Err(Error::invalid(
                "palette breaks",
                format!("{} breaks for {} colors", breaks.len(), palette.len()),
            ));
        }
        if breaks.iter().any(|b| !b.is_finite()) || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(
                "palette breaks",
                "must be finite and strictly ascending",
            ));
        }
        let domain = (breaks[0], breaks[breaks.len() - 1]);
        Ok(Self {
            palette,
            anchors: breaks,
            na_color,
            domain,
        })
    }

    pub fn palette(&self) -> &[Rgb] {
        &self.palette
    }

    pub fn anchors(&self) -> &[f64] {
        &self.anchors
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn na_color(&self) -> Rgb {
        self.na_color
    }

    /// Index `j` of the palette segment `[anchors[j], anchors[j+1]]` holding
    /// `v`, after clamping into the domain.
    pub fn segment(&self, v: f64) -> usize {
        let v = v.clamp(self.domain.0, self.domain.1);
        let last = self.anchors.len() - 2;
        self.anchors[1..]
            .iter()
            .position(|&a| v <= a)
            .unwrap_or(last)
            .min(last)
    }

    pub fn map(&self, v: Option<f64>) -> Rgb {
        let Some(v) = v else { return self.na_color };
        let (lo, hi) = self.domain;
        if lo == hi {
            return self.at_fraction(0.5);
        }
        let v = v.clamp(lo, hi);
        let j = self.segment(v);
        let (a0, a1) = (self.anchors[j], self.anchors[j + 1]);
        let t = if a1 > a0 { (v - a0) / (a1 - a0) } else { 0.0 };
        lerp(self.palette[j], self.palette[j + 1], t)
    }

    /// Color at relative position `t` in `[0, 1]` along the palette.
    fn at_fraction(&self, t: f64) -> Rgb {
        let pos = t.clamp(0.0, 1.0) * (self.palette.len() - 1) as f64;
        let j = (pos.floor() as usize).min(self.palette.len() - 2);
        lerp(self.palette[j], self.palette[j + 1], pos - j as f64)
    }
}

/// Channel-wise sRGB interpolation, rounding half up.
fn lerp(a: Rgb, b: Rgb, t: f64) -> Rgb {
    let ch = |x: u8, y: u8| {
        let v = x as f64 + (y as f64 - x as f64) * t;
        (v + 0.5).floor().clamp(0.0, 255.0) as u8
    };
    Rgb::new(ch(a.r, b.r), ch(a.g, b.g), ch(a.b, b.b))
}

/// Maps an optional value to a color under `scale`.
pub fn map_color(v: Option<f64>, scale: &ColorScale) -> Rgb {
    scale.map(v)
}
