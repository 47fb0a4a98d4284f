//! Line-oriented text form of linear programs and extended formulations.
//!
//! ```text
//! var <name> [lb <q>] [ub <q>]
//! row <name> <=|=|>= <q> : <q>*<var> ...
//! proj <ground> = <q>*<var> + ... + <q>
//! ```
//!
//! Rationals are integers or `p/q`; `#` starts a comment. Variables must be
//! declared before rows and projections use them.

use std::fmt::Write;

use efc_core::lp::{AffineExpr, ExtendedFormulation, LinearProgram, LpError, Rational, Sense, VarId};

use crate::formats::content_lines;

#[derive(Debug, thiserror::Error)]
pub enum LpTextError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Lp { line: usize, source: LpError },
    #[error(transparent)]
    Formulation(#[from] LpError),
}

fn syntax(line: usize, message: impl Into<String>) -> LpTextError {
    LpTextError::Syntax { line, message: message.into() }
}

fn term(out: &mut String, lp: &LinearProgram, v: VarId, c: &Rational) {
    let _ = write!(out, "{c}*{}", lp.var_name(v));
}

pub fn write_lp(lp: &LinearProgram) -> String {
    let mut out = String::new();
    for v in lp.vars() {
        out.push_str("var ");
        out.push_str(&v.name);
        if let Some(l) = &v.lb {
            let _ = write!(out, " lb {l}");
        }
        if let Some(u) = &v.ub {
            let _ = write!(out, " ub {u}");
        }
        out.push('\n');
    }
    for r in lp.rows() {
        let _ = write!(out, "row {} {} {} :", r.name, r.sense.as_str(), r.rhs);
        for (v, c) in &r.terms {
            out.push(' ');
            term(&mut out, lp, *v, c);
        }
        out.push('\n');
    }
    out
}

pub fn write_ef(ef: &ExtendedFormulation) -> String {
    let mut out = write_lp(&ef.lp);
    for (g, p) in ef.ground.iter().zip(&ef.projection) {
        let _ = write!(out, "proj {g} =");
        for (v, c) in &p.terms {
            out.push(' ');
            term(&mut out, &ef.lp, *v, c);
            out.push_str(" +");
        }
        let _ = writeln!(out, " {}", p.constant);
    }
    out
}

fn rational(line: usize, s: &str) -> Result<Rational, LpTextError> {
    s.parse().map_err(|_| syntax(line, format!("`{s}` is not a rational")))
}

/// `+`-separated `q*var` terms and constants; a lone `-` negates the next item.
fn affine(line: usize, lp: &LinearProgram, tokens: &[&str]) -> Result<(Vec<(VarId, Rational)>, Rational), LpTextError> {
    let mut terms = Vec::new();
    let mut constant = Rational::zero();
    let mut negate = false;
    for &t in tokens {
        match t {
            "+" => continue,
            "-" => {
                negate = !negate;
                continue;
            }
            _ => {}
        }
        let (c, v) = match t.split_once('*') {
            Some((c, name)) => {
                let v = lp.var(name).map_err(|source| LpTextError::Lp { line, source })?;
                (rational(line, c)?, Some(v))
            }
            None => (rational(line, t)?, None),
        };
        let c = if negate { -&c } else { c };
        negate = false;
        match v {
            Some(v) => terms.push((v, c)),
            None => constant = &constant + &c,
        }
    }
    Ok((terms, constant))
}

/// Parse an extended formulation. A file without `proj` lines is a plain
/// program and yields an empty ground set.
pub fn parse_ef(text: &str) -> Result<ExtendedFormulation, LpTextError> {
    let mut lp = LinearProgram::new();
    let mut ground = Vec::new();
    let mut projection = Vec::new();
    for (n, line) in content_lines(text) {
        let tok: Vec<&str> = line.split_whitespace().collect();
        let lp_err = |source| LpTextError::Lp { line: n, source };
        match tok.as_slice() {
            ["var", name, rest @ ..] => {
                let (mut lb, mut ub) = (None, None);
                let mut it = rest.chunks(2);
                for pair in &mut it {
                    match pair {
                        ["lb", q] if lb.is_none() => lb = Some(rational(n, q)?),
                        ["ub", q] if ub.is_none() => ub = Some(rational(n, q)?),
                        _ => return Err(syntax(n, format!("bad bound list in `{line}`"))),
                    }
                }
                lp.add_var(name, lb, ub).map_err(lp_err)?;
            }
            ["row", name, sense, rhs, ":", rest @ ..] => {
                let sense = Sense::parse(sense).ok_or_else(|| syntax(n, format!("unknown sense `{sense}`")))?;
                let (terms, constant) = affine(n, &lp, rest)?;
                if !constant.is_zero() {
                    return Err(syntax(n, "constant term on the left of a row"));
                }
                lp.add_row(name, terms, sense, rational(n, rhs)?).map_err(lp_err)?;
            }
            ["proj", g, "=", rest @ ..] => {
                let (terms, constant) = affine(n, &lp, rest)?;
                ground.push(g.to_string());
                projection.push(AffineExpr::new(terms, constant));
            }
            _ => return Err(syntax(n, format!("unrecognized line `{line}`"))),
        }
    }
    Ok(ExtendedFormulation::new(lp, ground, projection)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use efc_core::formulations::{explicit_flat_ef, graphic_independence_ef};
    use efc_core::matroid::{r10, Graph, DEFAULT_CAP};

    #[test]
    fn graphic_round_trip() {
        let ef = graphic_independence_ef(&Graph::complete(4)).unwrap();
        let text = write_ef(&ef);
        assert_eq!(parse_ef(&text).unwrap(), ef);
    }

    #[test]
    fn flats_round_trip_with_fractions() {
        let mut ef = explicit_flat_ef(&r10(), DEFAULT_CAP).unwrap();
        ef.lp.set_bounds(0, Some(Rational::new(-1, 3)), Some(Rational::new(7, 2)));
        ef.projection[1].constant = Rational::new(-5, 4);
        assert_eq!(parse_ef(&write_ef(&ef)).unwrap(), ef);
    }

    #[test]
    fn hand_written_program() {
        let ef = parse_ef("var x lb 0\nvar y ub 1/2 # comment\nrow r <= 3 : 1*x - 2*y\nproj a = 1*x + - 1*y + 1\n").unwrap();
        assert_eq!(ef.lp.vars().len(), 2);
        assert_eq!(ef.lp.rows()[0].terms, vec![(0, Rational::one()), (1, Rational::from_integer(-2))]);
        assert_eq!(ef.projection[0].terms, vec![(0, Rational::one()), (1, -Rational::one())]);
        assert_eq!(ef.projection[0].constant, Rational::one());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_ef("var x\nrow r <= 1 : 1*z\n"), Err(LpTextError::Lp { line: 2, .. })));
        assert!(matches!(parse_ef("var x lb\n"), Err(LpTextError::Syntax { line: 1, .. })));
        assert!(matches!(parse_ef("row r ~ 1 :\n"), Err(LpTextError::Syntax { line: 1, .. })));
        assert!(matches!(parse_ef("var x\nvar x\n"), Err(LpTextError::Lp { line: 2, .. })));
    }
}
