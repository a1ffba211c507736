//! Fixed-pitch text metrics, so layout never depends on installed fonts.

/// Advance width of `c` in ems for the built-in monospace metric table.
pub fn advance_em(c: char) -> f64 {
    match c as u32 {
        // combining marks and zero-width characters
        0x0300..=0x036F | 0x200B..=0x200F | 0xFE00..=0xFE0F => 0.0,
        // CJK, Hangul, fullwidth forms, emoji: double width
        0x1100..=0x115F
        | 0x2E80..=0xA4CF
        | 0xAC00..=0xD7A3
        | 0xF900..=0xFAFF
        | 0xFF00..=0xFF60
        | 0xFFE0..=0xFFE6
        | 0x1F300..=0x1FAFF
        | 0x20000..=0x3FFFD => 1.2,
        _ => 0.6,
    }
}

/// Unrotated width of `text` at `font_size`.
pub fn text_width(text: &str, font_size: f64) -> f64 {
    text.chars().map(advance_em).sum::<f64>() * font_size
}

/// Axis-aligned bounding box `(width, height)` of a single line of text
/// rotated by `angle_deg`, with line height equal to the font size.
pub fn rotated_extent(text: &str, font_size: f64, angle_deg: f64) -> (f64, f64) {
    let w = text_width(text, font_size);
    let h = if text.is_empty() { 0.0 } else { font_size };
    let (s, c) = angle_deg.to_radians().sin_cos();
    let (s, c) = (snap(s), snap(c));
    (w * c.abs() + h * s.abs(), w * s.abs() + h * c.abs())
}

// keeps sin(90 deg) etc. exact
fn snap(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else if (x.abs() - 1.0).abs() < 1e-12 {
        x.signum()
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(text_width("abcd", 10.0), 24.0);
        assert_eq!(text_width("", 10.0), 0.0);
        assert_eq!(text_width("日本", 10.0), 24.0);
    }

    #[test]
    fn rotation() {
        assert_eq!(rotated_extent("abcd", 10.0, 0.0), (24.0, 10.0));
        assert_eq!(rotated_extent("abcd", 10.0, 90.0), (10.0, 24.0));
        assert_eq!(rotated_extent("abcd", 10.0, 180.0), (24.0, 10.0));
        let (w, h) = rotated_extent("abcd", 10.0, 45.0);
        let e = (24.0 + 10.0) * std::f64::consts::FRAC_1_SQRT_2;
        assert!((w - e).abs() < 1e-12 && (h - e).abs() < 1e-12);
    }
}
