use num_complex::Complex64;

/// Parses `a+bi`, `a-bi`, `a`, `bi` or `i` with decimal components.
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("expected a complex number like 0.25+0i, got {input:?}");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return real(&s).map(|re| Complex64::new(re, 0.0)).ok_or_else(bad);
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k]).ok_or_else(bad)?, imag(&body[k..]).ok_or_else(bad)?),
        None => (0.0, imag(body).ok_or_else(bad)?),
    };
    Ok(Complex64::new(re, im))
}

fn real(s: &str) -> Option<f64> {
    if s.chars().any(|c| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn imag(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => real(s),
    }
}
