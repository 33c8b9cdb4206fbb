//! The function descriptor mini-grammar.
//!
//! Atoms: `exp`, `sin:SCALE`, `poly:C,C,...` (descending powers, as typed),
//! `ml:ORDER[,PARAM]`, `rgamma[:SHIFT]`, `const:C`, `zeros:FILE[,q=N]`.
//! Composites: `prod:A;B;...` and `quot:A|B`; parentheses group, so
//! `quot:(prod:exp;sin:pi)|poly:1,0` stays unambiguous. Numbers accept the
//! literal `pi`; complex constants read as `a`, `bi`, or `a+bi`.
//!
//! Linear and quadratic `poly:` descriptors are lowered to root form with
//! exact closed-form roots, so the zero-dependent machinery (counting
//! functions, Jensen, the characteristic of quotients) sees them
//! structurally. Higher degrees keep the plain coefficient form.

use growthlab_core::funcat::FunctionSpec;
use growthlab_core::points::PointDistribution;
use growthlab_core::products::CanonicalProductSpec;
use growthlab_core::Complex64;

use crate::zeros_io;

#[derive(Debug, thiserror::Error)]
#[error("descriptor error: {0}")]
pub struct ParseError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

/// Parse a real number; the literal `pi` (with optional sign) is accepted.
pub fn parse_real(s: &str) -> Result<f64, ParseError> {
    let t = s.trim();
    match t.strip_prefix('+').unwrap_or(t) {
        "pi" => Ok(std::f64::consts::PI),
        "-pi" => Ok(-std::f64::consts::PI),
        _ => t
            .parse::<f64>()
            .map_err(|_| ParseError(format!("bad number {t:?}"))),
    }
}

/// Parse `a`, `bi`, `a+bi`, `a-bi` (also bare `i`, `-i`).
pub fn parse_complex(s: &str) -> Result<Complex64, ParseError> {
    let t = s.trim();
    if t.is_empty() {
        return err("empty number");
    }
    // pure reals first, so the trailing letter of `pi` is not mistaken
    // for the imaginary unit
    if let Ok(re) = parse_real(t) {
        return Ok(Complex64::new(re, 0.0));
    }
    if let Some(body) = t.strip_suffix('i') {
        // find the split between real and imaginary parts: the last +/-
        // that is not leading and not an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_s {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => parse_real(im_s)?,
        };
        let re = if re_s.is_empty() { 0.0 } else { parse_real(re_s)? };
        return Ok(Complex64::new(re, im));
    }
    Ok(Complex64::new(parse_real(t)?, 0.0))
}

/// Split on `sep` at parenthesis depth zero.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_outer_parens(s: &str) -> &str {
    let t = s.trim();
    if !(t.starts_with('(') && t.ends_with(')')) {
        return t;
    }
    // only strip when the opening paren matches the final one
    let mut depth = 0i32;
    for (k, c) in t.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && k != t.len() - 1 {
                    return t;
                }
            }
            _ => {}
        }
    }
    strip_outer_parens(&t[1..t.len() - 1])
}

/// Lower a descending coefficient list to the catalog spec: exact roots
/// for degrees 1 and 2, plain coefficient form above.
fn lower_polynomial(desc: &[Complex64]) -> Result<FunctionSpec, ParseError> {
    let lead = desc.iter().position(|c| c.norm() > 0.0);
    let Some(lead) = lead else {
        return err("polynomial with all coefficients zero");
    };
    let c = &desc[lead..];
    let ascending = || c.iter().rev().cloned().collect::<Vec<_>>();
    match c.len() {
        1 => Ok(FunctionSpec::Polynomial {
            coefficients: ascending(),
        }),
        2 => {
            // a z + b
            let root = -c[1] / c[0];
            Ok(FunctionSpec::ZeroForm {
                leading: c[0],
                zeros: PointDistribution::from_points([(root, 1u32)]),
            })
        }
        3 => {
            // a z^2 + b z + c0, roots by the cancellation-free formula
            let (a, b, c0) = (c[0], c[1], c[2]);
            let d = (b * b - 4.0 * a * c0).sqrt();
            let s = if (b + d).norm() >= (b - d).norm() {
                b + d
            } else {
                b - d
            };
            let roots: [Complex64; 2] = if s.norm() == 0.0 {
                // b = 0, c0 = 0 up to roundoff: double root at 0
                [Complex64::new(0.0, 0.0); 2]
            } else {
                let q = -0.5 * s;
                [q / a, c0 / q]
            };
            Ok(FunctionSpec::ZeroForm {
                leading: a,
                zeros: PointDistribution::from_points(roots.iter().map(|r| (*r, 1u32))),
            })
        }
        _ => Ok(FunctionSpec::Polynomial {
            coefficients: ascending(),
        }),
    }
}

/// Parse a descriptor into a function spec.
pub fn parse_spec(s: &str) -> Result<FunctionSpec, ParseError> {
    let t = strip_outer_parens(s);
    if t.is_empty() {
        return err("empty descriptor");
    }
    if t == "exp" {
        return Ok(FunctionSpec::exp());
    }
    if t == "rgamma" {
        return Ok(FunctionSpec::ReciprocalGamma {
            shift: Complex64::new(0.0, 0.0),
        });
    }
    if let Some(rest) = t.strip_prefix("sin:") {
        return Ok(FunctionSpec::Sine {
            scale: parse_complex(rest)?,
        });
    }
    if let Some(rest) = t.strip_prefix("poly:") {
        let coeffs = rest
            .split(',')
            .map(parse_complex)
            .collect::<Result<Vec<_>, _>>()?;
        return lower_polynomial(&coeffs);
    }
    if let Some(rest) = t.strip_prefix("ml:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.is_empty() || parts.len() > 2 {
            return err(format!("ml takes ORDER[,PARAM], got {rest:?}"));
        }
        let order = parse_real(parts[0])?;
        let parameter = if parts.len() == 2 {
            parse_real(parts[1])?
        } else {
            1.0
        };
        if !(order > 0.0) {
            return err(format!("ml order must be positive, got {order}"));
        }
        return Ok(FunctionSpec::MittagLeffler { order, parameter });
    }
    if let Some(rest) = t.strip_prefix("rgamma:") {
        return Ok(FunctionSpec::ReciprocalGamma {
            shift: parse_complex(rest)?,
        });
    }
    if let Some(rest) = t.strip_prefix("const:") {
        return Ok(FunctionSpec::constant(parse_complex(rest)?));
    }
    if let Some(rest) = t.strip_prefix("prod:") {
        let factors = split_top(rest, ';')
            .into_iter()
            .map(parse_spec)
            .collect::<Result<Vec<_>, _>>()?;
        if factors.is_empty() {
            return err("empty product");
        }
        return Ok(FunctionSpec::Product(factors));
    }
    if let Some(rest) = t.strip_prefix("quot:") {
        let parts = split_top(rest, '|');
        if parts.len() != 2 {
            return err(format!("quot takes NUM|DEN, got {rest:?}"));
        }
        return Ok(FunctionSpec::Quotient {
            numerator: Box::new(parse_spec(parts[0])?),
            denominator: Box::new(parse_spec(parts[1])?),
        });
    }
    if let Some(rest) = t.strip_prefix("zeros:") {
        let mut genus = 0u32;
        let mut path = rest;
        if let Some((head, q)) = rest.rsplit_once(",q=") {
            genus = q
                .parse()
                .map_err(|_| ParseError(format!("bad genus {q:?}")))?;
            path = head;
        }
        let zeros = zeros_io::read_zero_list(std::path::Path::new(path))
            .map_err(|e| ParseError(format!("{path}: {e}")))?;
        if zeros.origin_multiplicity() > 0 {
            return err("canonical product zero list must not contain the origin");
        }
        return Ok(FunctionSpec::CanonicalProduct(CanonicalProductSpec {
            zeros,
            genus,
            log_leading: 0.0,
            declared_tail: None,
        }));
    }
    err(format!("unknown descriptor {t:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("2.5").unwrap(), z(2.5, 0.0));
        assert_eq!(parse_complex("-3").unwrap(), z(-3.0, 0.0));
        assert_eq!(parse_complex("i").unwrap(), z(0.0, 1.0));
        assert_eq!(parse_complex("-2i").unwrap(), z(0.0, -2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), z(1.0, 2.0));
        assert_eq!(parse_complex("1.5e-2-3i").unwrap(), z(0.015, -3.0));
        assert_eq!(parse_complex("pi").unwrap(), z(std::f64::consts::PI, 0.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("nope").is_err());
    }

    #[test]
    fn atoms_parse() {
        assert!(matches!(
            parse_spec("exp").unwrap(),
            FunctionSpec::ExpPoly { .. }
        ));
        match parse_spec("sin:pi").unwrap() {
            FunctionSpec::Sine { scale } => {
                assert_eq!(scale, z(std::f64::consts::PI, 0.0))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_spec("ml:0.75").unwrap(),
            FunctionSpec::MittagLeffler {
                order,
                parameter
            } if order == 0.75 && parameter == 1.0
        ));
        assert!(matches!(
            parse_spec("rgamma:1").unwrap(),
            FunctionSpec::ReciprocalGamma { .. }
        ));
    }

    #[test]
    fn quadratic_poly_lowers_to_exact_roots() {
        // z^2 - 1 -> roots +-1
        match parse_spec("poly:1,0,-1").unwrap() {
            FunctionSpec::ZeroForm { leading, zeros } => {
                assert_eq!(leading, z(1.0, 0.0));
                let pts: Vec<Complex64> =
                    zeros.entries().iter().map(|(a, _)| *a).collect();
                assert!(pts.contains(&z(1.0, 0.0)) && pts.contains(&z(-1.0, 0.0)));
            }
            other => panic!("{other:?}"),
        }
        // pi z keeps the origin as origin mass
        match parse_spec("poly:pi,0").unwrap() {
            FunctionSpec::ZeroForm { leading, zeros } => {
                assert_eq!(leading, z(std::f64::consts::PI, 0.0));
                assert_eq!(zeros.origin_multiplicity(), 1);
            }
            other => panic!("{other:?}"),
        }
        // cubics stay in coefficient form, ascending storage
        match parse_spec("poly:2,0,0,1").unwrap() {
            FunctionSpec::Polynomial { coefficients } => {
                assert_eq!(coefficients[0], z(1.0, 0.0));
                assert_eq!(coefficients[3], z(2.0, 0.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn composites_nest_with_parens() {
        let f = parse_spec("quot:(prod:exp;sin:pi)|poly:1,2").unwrap();
        match f {
            FunctionSpec::Quotient { numerator, .. } => match *numerator {
                FunctionSpec::Product(fs) => assert_eq!(fs.len(), 2),
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
        let g = parse_spec("prod:const:2;(quot:exp|sin:1)").unwrap();
        match g {
            FunctionSpec::Product(fs) => {
                assert!(matches!(fs[1], FunctionSpec::Quotient { .. }))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_descriptors_are_rejected() {
        assert!(parse_spec("").is_err());
        assert!(parse_spec("poly:").is_err());
        assert!(parse_spec("poly:0,0").is_err());
        assert!(parse_spec("quot:exp").is_err());
        assert!(parse_spec("ml:-1").is_err());
        assert!(parse_spec("mystery:1").is_err());
    }
}
