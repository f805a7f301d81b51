//! From parsed text to a problem the core library can solve.

use std::fmt;

use gdtel_core::macaulay::is_regular_with_limit;
use gdtel_core::multipoly::{HPoly, MPoly, PoleFraction};
use gdtel_core::reduction::to_integral;
use gdtel_core::scalars::RatFunc;
use gdtel_core::Error;

use crate::parse::{parse_expr, ParseError, Parsed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Auto,
    Projective,
    Affine,
}

/// Errors surfaced by the front end, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Usage(String),
    Core(Error),
    /// `--verify` was requested and the check failed.
    Unverified,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Core(Error::DegreeError(_)) | CliError::Core(Error::ZeroDenominator) => 4,
            CliError::Core(Error::NotRegular) => 5,
            CliError::Core(Error::ResourceLimit(_)) => 6,
            CliError::Unverified => 7,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Unverified => write!(f, "verification failed"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Clone, Debug)]
pub enum Kind {
    /// `F = a/f^ℓ` homogeneous of degree `−(n+1)` in `n+1` variables.
    Projective(PoleFraction<RatFunc>),
    /// `F = a/f_aff^ℓ` in `n` affine variables.
    Affine,
}

#[derive(Clone, Debug)]
pub struct Problem {
    pub param: String,
    pub vars: Vec<String>,
    pub a: MPoly<RatFunc>,
    pub f: MPoly<RatFunc>,
    pub ell: u32,
    pub kind: Kind,
}

impl Problem {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// Splits `--vars t,x,y` into the parameter and the variables.
pub fn split_vars(spec: &str) -> Result<(String, Vec<String>), CliError> {
    let names: Vec<String> = spec.split(',').map(|s| s.trim().to_string()).collect();
    let valid = |s: &String| {
        let mut ch = s.chars();
        ch.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
    };
    if names.len() < 2 {
        return Err(CliError::Usage("--vars needs the parameter and at least one variable".into()));
    }
    if let Some(bad) = names.iter().find(|s| !valid(s)) {
        return Err(CliError::Usage(format!("invalid identifier '{bad}' in --vars")));
    }
    for (i, s) in names.iter().enumerate() {
        if names[..i].contains(s) {
            return Err(CliError::Usage(format!("identifier '{s}' declared twice")));
        }
    }
    Ok((names[0].clone(), names[1..].to_vec()))
}

/// `a`, `f` and `ℓ` from a factored fraction. Several distinct factors are
/// multiplied out, keeping the gcd of their exponents as the pole order.
fn as_pole_fraction(p: Parsed) -> Result<(MPoly<RatFunc>, MPoly<RatFunc>, u32), CliError> {
    if p.den.is_empty() {
        return Err(Error::DegreeError("integrand has no denominator depending on the variables".into()).into());
    }
    let ell = p.den.iter().fold(0u32, |g, (_, e)| num_integer::gcd(g, *e));
    let nv = p.num.nvars();
    let f = p.den.iter().fold(MPoly::one(nv), |acc, (g, e)| acc.mul(&g.pow(e / ell)));
    Ok((p.num, f, ell))
}

fn projective(a: &MPoly<RatFunc>, f: &MPoly<RatFunc>, ell: u32) -> Result<PoleFraction<RatFunc>, Error> {
    let base = HPoly::from_poly(f.clone())?;
    let want = ell as i64 * base.degree() as i64 - a.nvars() as i64;
    if want < 0 {
        return Err(Error::DegreeError(format!("numerator degree would have to be {want}")));
    }
    let num = if a.is_zero() { HPoly::zero(a.nvars(), want as u32) } else { HPoly::from_poly(a.clone())? };
    PoleFraction::new(num, base, ell)
}

/// Whether the base of `F_pr` satisfies (H).
pub fn projective_is_regular(pf: &PoleFraction<RatFunc>, max_rows: usize) -> Result<bool, Error> {
    let (_, base) = to_integral(pf);
    is_regular_with_limit(&base, max_rows)
}

pub fn parse_problem(vars: &str, mode: Mode, text: &str, max_rows: usize) -> Result<Problem, CliError> {
    let (param, vars) = split_vars(vars)?;
    let (a, f, ell) = as_pole_fraction(parse_expr(text, &param, &vars)?)?;
    classify(param, vars, a, f, ell, mode, max_rows)
}

/// Like [`parse_problem`], but a polynomial is also accepted and read as the
/// denominator `f` (with a zero numerator).
pub fn parse_denominator(vars: &str, mode: Mode, text: &str, max_rows: usize) -> Result<Problem, CliError> {
    let (param, vars) = split_vars(vars)?;
    let parsed = parse_expr(text, &param, &vars)?;
    let (a, f, ell) = if parsed.den.is_empty() {
        if parsed.num.total_degree().unwrap_or(0) == 0 {
            return Err(Error::DegreeError("the polynomial does not depend on the variables".into()).into());
        }
        (MPoly::zero(vars.len()), parsed.num, 1)
    } else {
        as_pole_fraction(parsed)?
    };
    classify(param, vars, a, f, ell, mode, max_rows)
}

fn classify(
    param: String,
    vars: Vec<String>,
    a: MPoly<RatFunc>,
    f: MPoly<RatFunc>,
    ell: u32,
    mode: Mode,
    max_rows: usize,
) -> Result<Problem, CliError> {
    let kind = match mode {
        Mode::Projective => Kind::Projective(projective(&a, &f, ell)?),
        Mode::Affine => Kind::Affine,
        Mode::Auto => match projective(&a, &f, ell) {
            Ok(pf) if projective_is_regular(&pf, max_rows).unwrap_or(false) => Kind::Projective(pf),
            _ => Kind::Affine,
        },
    };
    Ok(Problem { param, vars, a, f, ell, kind })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes() {
        let p = parse_problem("t,x", Mode::Auto, "1/(x^2 - t)", 400).unwrap();
        assert!(matches!(p.kind, Kind::Affine));
        assert_eq!((p.nvars(), p.ell), (1, 1));
        let p = parse_problem("t,x0,x1", Mode::Auto, "1/(x0^2 - t*x1^2)", 400).unwrap();
        assert!(matches!(p.kind, Kind::Projective(_)));
        let p = parse_problem("t,x,y,z", Mode::Auto, "(x - y)/(z^2 - (x^3+t)*(y^3+t))", 400).unwrap();
        assert!(matches!(p.kind, Kind::Affine));
        assert_eq!(p.nvars(), 3);
        let e = parse_problem("t,x0,x1", Mode::Projective, "1/(x0^3 - t*x1^3)", 400).unwrap_err();
        assert_eq!(e.exit_code(), 4);
        let e = parse_problem("t,x", Mode::Auto, "1/(x - y)", 400).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let e = parse_problem("t", Mode::Auto, "1", 400).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn pole_order_survives() {
        let p = parse_problem("t,x0,x1,x2", Mode::Auto, "x0^3/(x0^3 + x1^3 + x2^3 - 3*t*x0*x1*x2)^2", 400).unwrap();
        assert_eq!(p.ell, 2);
        assert!(matches!(p.kind, Kind::Projective(_)));
    }
}
