//! Text and JSON output, and re-parsing of printed operators.

use gdtel_core::multipoly::MPoly;
use gdtel_core::scalars::{RatFunc, Ring, ZPoly};
use gdtel_core::telescoper::DiffOp;
use serde_json::{json, Map, Value};

use crate::parse::{parse_expr, ParseError};

/// Name of the derivation for parameter `param`.
pub fn derivation(param: &str) -> String {
    format!("D{param}")
}

pub fn op_text(op: &DiffOp, param: &str) -> String {
    op.display_with(param, &derivation(param))
}

/// Inverse of [`op_text`].
pub fn parse_op(text: &str, param: &str) -> Result<DiffOp, ParseError> {
    let d = vec![derivation(param)];
    let p = parse_expr(text, param, &d)?;
    if !p.den.is_empty() {
        return Err(ParseError { pos: 0, msg: "operator coefficients must not contain the derivation in a denominator".into() });
    }
    let order = p.num.total_degree().unwrap_or(0) as usize;
    let mut cs = vec![RatFunc::zero(); order + 1];
    for (m, c) in p.num.terms() {
        cs[m.degree() as usize] = c.clone();
    }
    if cs.iter().all(|c| c.is_zero()) {
        return Err(ParseError { pos: 0, msg: "zero operator".into() });
    }
    Ok(DiffOp::from_ratfuncs(&cs))
}

fn monomial_text(exps: &[u32], names: &[String]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    parts.join("*")
}

/// `(c)*x^2*y + …` with coefficients in the parameter.
pub fn poly_text(p: &MPoly<ZPoly>, names: &[String], param: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let mono = monomial_text(m.exps(), names);
            let cs = format!("({})", c.display_var(param));
            if mono.is_empty() {
                cs
            } else {
                format!("{cs}*{mono}")
            }
        })
        .collect();
    parts.join(" + ")
}

fn int_array(z: &ZPoly) -> Value {
    Value::Array(
        z.coeffs()
            .iter()
            .map(|c| serde_json::from_str::<serde_json::Number>(&c.to_string()).map(Value::Number).expect("integer literal"))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct Report {
    pub param: String,
    pub op: DiffOp,
    pub pipeline: &'static str,
    pub verified: Option<bool>,
    pub timings: Vec<(&'static str, f64)>,
    pub certificate: Option<Vec<String>>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = String::new();
        s += &format!("order: {}\n", self.op.order());
        s += &format!("operator: {}\n", op_text(&self.op, &self.param));
        for (k, c) in self.op.coeffs().iter().enumerate() {
            s += &format!("c{k} = {}\n", c.display_var(&self.param));
        }
        s += &format!("pipeline: {}\n", self.pipeline);
        if let Some(v) = self.verified {
            s += &format!("verified: {v}\n");
        }
        if let Some(cert) = &self.certificate {
            s += "certificate:\n";
            for c in cert {
                s += &format!("  {c}\n");
            }
        }
        for n in &self.notes {
            s += &format!("note: {n}\n");
        }
        for (k, v) in &self.timings {
            s += &format!("time {k}: {v:.3} s\n");
        }
        s
    }

    pub fn json(&self) -> Value {
        let mut timings = Map::new();
        for (k, v) in &self.timings {
            timings.insert(k.to_string(), json!(v));
        }
        let mut out = json!({
            "order": self.op.order(),
            "coeffs": self.op.coeffs().iter().map(int_array).collect::<Vec<_>>(),
            "operator": op_text(&self.op, &self.param),
            "pipeline": self.pipeline,
            "verified": self.verified,
            "timings": timings,
        });
        if let Some(c) = &self.certificate {
            out["certificate"] = json!(c);
        }
        if !self.notes.is_empty() {
            out["notes"] = json!(self.notes);
        }
        out
    }
}
