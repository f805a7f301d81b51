//! Dispatch of the subcommands over the core pipelines.

use std::time::{Duration, Instant};

use gdtel_core::macaulay::{primitive_cohomology_dim, quotient_dims, PivotPolicy, SplitFamily};
use gdtel_core::multipoly::{homogenize_pole, PoleFraction};
use gdtel_core::reduction::{reduce, to_integral};
use gdtel_core::scalars::RatFunc;
use gdtel_core::singular::{telesc_projective_any, AffineConfig};
use gdtel_core::telescoper::{telesc, verify_certificate, verify_telescoper, OpCertificate, TelescConfig};
use serde_json::{json, Value};

use crate::problem::{projective_is_regular, CliError, Kind, Problem};
use crate::render::{poly_text, Report};

#[derive(Clone, Debug)]
pub struct Options {
    pub certificate: bool,
    pub verify: bool,
    pub max_order: Option<usize>,
    pub timeout: Option<Duration>,
    pub max_rows: usize,
    /// Use the deformation pipeline even when `f_pr` is smooth.
    pub force_singular: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            certificate: false,
            verify: false,
            max_order: None,
            timeout: None,
            max_rows: gdtel_core::macaulay::DEFAULT_MAX_ROWS,
            force_singular: false,
        }
    }
}

impl Options {
    fn telesc_config(&self, start: Instant) -> TelescConfig {
        TelescConfig {
            track_certificate: self.certificate,
            max_rows: self.max_rows,
            max_order: self.max_order,
            deadline: self.timeout.map(|t| start + t),
            ..Default::default()
        }
    }
}

/// Homogenizing variable name, distinct from every declared identifier.
fn fresh_name(p: &Problem) -> String {
    ["x0", "w", "h", "u0"]
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|i| format!("w{i}")))
        .find(|s| *s != p.param && !p.vars.contains(s))
        .unwrap()
}

/// The projective fraction to work on and the names of its variables.
fn projective_view(p: &Problem) -> Result<(PoleFraction<RatFunc>, Vec<String>), CliError> {
    match &p.kind {
        Kind::Projective(pf) => Ok((pf.clone(), p.vars.clone())),
        Kind::Affine => {
            let pf = homogenize_pole(&p.a, &p.f, p.ell, p.nvars())?;
            let mut names = vec![fresh_name(p)];
            names.extend(p.vars.iter().cloned());
            Ok((pf, names))
        }
    }
}

fn certificate_lines(cert: &OpCertificate, names: &[String], param: &str) -> Vec<String> {
    let mut out = vec![format!("f = {}", poly_text(cert.base.poly(), names, param))];
    for (i, c) in cert.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.simplified();
        out.push(format!(
            "A_{} = ({}) / (({}) * f^{})",
            names[i],
            poly_text(&c.num, names, param),
            c.den.display_var(param),
            c.pole
        ));
    }
    out
}

pub fn telescope(p: &Problem, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let cfg = opts.telesc_config(start);
    let (pf, names) = projective_view(p)?;
    let mut notes = vec![];
    let regular = !opts.force_singular
        && match projective_is_regular(&pf, opts.max_rows) {
            Ok(r) => r,
            Err(gdtel_core::Error::ResourceLimit(m)) if matches!(p.kind, Kind::Affine) => {
                notes.push(format!("regularity undecided ({m}); treated as singular"));
                false
            }
            Err(e) => return Err(e.into()),
        };
    if matches!(p.kind, Kind::Projective(_)) && !regular && !opts.force_singular {
        return Err(gdtel_core::Error::NotRegular.into());
    }
    let (op, pipeline, cert) = if regular {
        let out = telesc(&pf, &cfg)?;
        (out.op, "regular", out.certificate)
    } else {
        let acfg = AffineConfig { telesc: cfg.clone(), force_singular: true, ..Default::default() };
        let out = telesc_projective_any(&pf, &acfg)?;
        notes.push(format!(
            "deformation pipeline: {} specializations, alpha = {}; validated on fresh points, not proven",
            out.points_used, out.alpha
        ));
        (out.op, "singular", None)
    };
    let solve_time = start.elapsed().as_secs_f64();
    let mut timings = vec![("telescope", solve_time)];

    let verified = if opts.verify {
        let t = Instant::now();
        let v = if regular {
            let mut ok = verify_telescoper(&op, &pf)?;
            if let Some(c) = &cert {
                let (input, _) = to_integral(&pf);
                ok &= verify_certificate(&op, &input, c);
            }
            Some(ok)
        } else {
            notes.push("no exact verification is available for a singular denominator".into());
            None
        };
        timings.push(("verify", t.elapsed().as_secs_f64()));
        v
    } else {
        None
    };
    let certificate = if opts.certificate {
        match &cert {
            Some(c) => Some(certificate_lines(c, &names, &p.param)),
            None => {
                notes.push("certificates are only produced by the regular pipeline".into());
                None
            }
        }
    } else {
        None
    };
    timings.push(("total", start.elapsed().as_secs_f64()));
    Ok(Report { param: p.param.clone(), op, pipeline, verified, timings, certificate, notes })
}

/// Reduced form of the integrand, as text lines.
pub fn reduced_form(p: &Problem, opts: &Options) -> Result<Vec<String>, CliError> {
    let (pf, names) = projective_view(p)?;
    if !projective_is_regular(&pf, opts.max_rows)? {
        return Err(gdtel_core::Error::NotRegular.into());
    }
    let (input, base) = to_integral(&pf);
    let family = SplitFamily::new(base.clone(), PivotPolicy::default()).with_max_rows(opts.max_rows);
    let (g, _) = reduce(&input, &family, false)?;
    let mut out = vec![format!("f = {}", poly_text(base.poly(), &names, &p.param))];
    out.push(format!("den = {}", g.den.display_var(&p.param)));
    if g.is_zero() {
        out.push("[F] = 0".into());
    }
    for (k, s) in g.slots.iter().enumerate() {
        if !s.is_zero() {
            out.push(format!("g{} = {}", k + 1, poly_text(s.poly(), &names, &p.param)));
        }
    }
    Ok(out)
}

/// Verdict on (H) for the denominator, with quotient dimensions.
pub fn check_regular(p: &Problem, opts: &Options) -> Result<Value, CliError> {
    let (pf, _) = projective_view(p)?;
    let (_, base) = to_integral(&pf);
    let regular = gdtel_core::macaulay::is_regular_with_limit(&base, opts.max_rows)?;
    let n = base.nvars() - 1;
    let d = base.degree();
    let mut v = json!({ "regular": regular, "n": n, "d": d });
    if regular {
        let dims = quotient_dims(&base)?;
        v["quotient_dims"] = json!(dims);
        v["dimension"] = json!(dims.iter().sum::<usize>());
        v["formula"] = json!(primitive_cohomology_dim(n, d).to_string().parse::<u64>().ok());
    }
    Ok(v)
}

pub fn check_regular_text(v: &Value) -> String {
    let mut s = format!("regular: {}\n", v["regular"]);
    if v["regular"] == json!(true) {
        s += &format!("quotient dims: {}\n", v["quotient_dims"]);
        s += &format!("dimension: {}\n", v["dimension"]);
        s += &format!("formula ((d-1)^(n+1) + (-1)^(n+1)(d-1))/d: {}\n", v["formula"]);
    }
    s
}
