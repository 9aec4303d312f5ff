//! Numeric literals in configuration values.
//!
//! A value is a product/quotient of factors evaluated left to right:
//!
//! ```text
//! value  := factor (('*' | '/') factor)*
//! factor := ['+' | '-'] (float | float 'pi' | 'pi')
//! ```
//!
//! so `2pi`, `2*pi`, `pi/2`, `-pi/2`, `0.5pi`, `13/7` and `3000*pi` are all
//! accepted. Results must be finite.

use std::f64::consts::PI;

pub fn parse_number(text: &str) -> Result<f64, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty value".into());
    }
    let mut value = None;
    let mut op = '*';
    let mut start = 0;
    for (i, ch) in text
        .char_indices()
        .chain(std::iter::once((text.len(), '\0')))
    {
        if ch == '*' || ch == '/' || ch == '\0' {
            let factor = parse_factor(&text[start..i])
                .map_err(|e| format!("malformed number `{text}`: {e}"))?;
            value = Some(match (value, op) {
                (None, _) => factor,
                (Some(v), '*') => v * factor,
                (Some(v), _) => v / factor,
            });
            op = ch;
            start = i + ch.len_utf8();
        }
    }
    let value = value.unwrap_or(f64::NAN);
    if !value.is_finite() {
        return Err(format!("`{text}` does not evaluate to a finite number"));
    }
    Ok(value)
}

fn parse_factor(factor: &str) -> Result<f64, String> {
    let factor = factor.trim();
    let (sign, body) = match factor.as_bytes().first() {
        Some(b'-') => (-1.0, &factor[1..]),
        Some(b'+') => (1.0, &factor[1..]),
        _ => (1.0, factor),
    };
    let body = body.trim();
    if body.is_empty() {
        return Err("missing operand".into());
    }
    let (coef, scale) = match body.strip_suffix("pi") {
        Some("") => return Ok(sign * PI),
        Some(rest) => (rest.trim(), PI),
        None => (body, 1.0),
    };
    // reject inf / nan spellings that f64::from_str accepts
    if !coef
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
    {
        return Err(format!("unexpected `{coef}`"));
    }
    let coef: f64 = coef.parse().map_err(|_| format!("unexpected `{coef}`"))?;
    Ok(sign * coef * scale)
}
