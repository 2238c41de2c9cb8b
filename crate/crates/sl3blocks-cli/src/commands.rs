use std::error::Error;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{json, Value};
use sl3blocks::blocks::{
    block_exponents, boundary_limit, boundary_limit_matches_tableau, covariance_check, mobius_sample,
    run_check, seeded_mobius_maps, specht_pde_residual, CftParams, Operator,
};
use sl3blocks::combinatorics::{enumerate_tableaux, kostka, Filling, Partition, Signature, TableauKind};
use sl3blocks::dimer::{convergence_study, limit_probability, Backend, SMode};
use sl3blocks::webs::{matrix_m, WebJson};

use crate::output::Report;
use crate::{BackendArg, SModeArg, Which};

pub type CliResult = Result<Report, Box<dyn Error>>;

fn rsyt(sig: &Signature) -> Result<Vec<Filling>, Box<dyn Error>> {
    Ok(enumerate_tableaux(&sig.pi(), &sig.content(), TableauKind::Rsyt)?)
}

fn rows_json(t: &Filling) -> Value {
    json!(t.rows())
}

pub fn tableaux(sigma: &str) -> CliResult {
    let sig = Signature::parse(sigma)?;
    let tabs = rsyt(&sig)?;
    let count = kostka(&sig.pi(), &sig.content())?;
    let mut text = String::new();
    for (i, t) in tabs.iter().enumerate() {
        writeln!(text, "T{}: {}", i + 1, t)?;
    }
    writeln!(text, "count: {}", tabs.len())?;
    Ok(Report {
        command: "tableaux",
        config: json!({ "sigma": sig.s() }),
        result: json!({
            "count": tabs.len(),
            "kostka": count,
            "tableaux": tabs.iter().map(rows_json).collect::<Vec<_>>(),
        }),
        text,
        passed: count == tabs.len(),
    })
}

struct Line {
    subject: String,
    check: String,
    ok: bool,
    detail: String,
}

fn verify_report(config: Value, lines: Vec<Line>, extra: Value) -> Report {
    let passed = lines.iter().all(|l| l.ok);
    let mut text = String::new();
    for l in &lines {
        let _ = writeln!(
            text,
            "{:<4} {:<28} {:<16} {}",
            if l.ok { "ok" } else { "FAIL" },
            l.subject,
            l.check,
            l.detail
        );
    }
    let failures = lines.iter().filter(|l| !l.ok).count();
    let _ = writeln!(text, "{} checks, {} failures", lines.len(), failures);
    let result = json!({
        "checks": lines.iter().map(|l| json!({
            "subject": l.subject,
            "check": l.check,
            "ok": l.ok,
            "detail": l.detail,
        })).collect::<Vec<_>>(),
        "failures": failures,
        "extra": extra,
    });
    Report {
        command: "verify",
        config,
        result,
        text,
        passed,
    }
}

fn operator_lines(sig: &Signature, ops: &[Operator], seed: u64) -> Result<Vec<Line>, Box<dyn Error>> {
    let params = CftParams::at_c2(sig.clone());
    let mut lines = Vec::new();
    for (i, t) in rsyt(sig)?.iter().enumerate() {
        let a = block_exponents(t, sig, false)?;
        for &op in ops {
            let r = run_check(t, &a, &params, op, seed)?;
            lines.push(Line {
                subject: format!("T{} {}", i + 1, t),
                check: r.operator.clone(),
                ok: r.residual_zero,
                detail: format!("{} residual terms", r.numerator_terms),
            });
        }
    }
    Ok(lines)
}

/// The three-column block on six points that satisfies the third-order
/// equations and the first two Ward identities but not the other three.
fn nonrectangular_lines(seed: u64) -> Result<Vec<Line>, Box<dyn Error>> {
    let sig = Signature::new(&[1; 6])?;
    let t = Filling::from_rows(vec![vec![1, 2, 3, 4], vec![5], vec![6]])?;
    let a = block_exponents(&t, &sig, true)?;
    let params = CftParams::at_c2(sig);
    let mut lines = Vec::new();
    let ops = (1..=6).map(Operator::Bpz).chain((1..=5).map(Operator::Ward));
    for op in ops {
        let r = run_check(&t, &a, &params, op, seed)?;
        let expect_zero = !matches!(op, Operator::Ward(3..=5));
        lines.push(Line {
            subject: format!("nonrectangular {t}"),
            check: r.operator.clone(),
            ok: r.residual_zero == expect_zero,
            detail: if expect_zero {
                format!("{} residual terms", r.numerator_terms)
            } else {
                format!("expected nonzero: {} residual terms", r.numerator_terms)
            },
        });
    }
    Ok(lines)
}

fn specht_lines(max_n: usize) -> Result<(Vec<Line>, Value), Box<dyn Error>> {
    let mut lines = Vec::new();
    for columns in [3usize, 2] {
        let mut count = 0;
        let mut bad = Vec::new();
        for n in 1..=max_n {
            for shape in Partition::all_of(n)
                .into_iter()
                .filter(|s| s.num_cols() <= columns)
            {
                for t in enumerate_tableaux(&shape, &vec![1; n], TableauKind::Syt)? {
                    for m in 1..=n {
                        count += 1;
                        if !specht_pde_residual(&t, m, columns)?.is_zero() {
                            bad.push(format!("{t} m={m}"));
                        }
                    }
                }
            }
        }
        lines.push(Line {
            subject: format!("SYT with ≤{columns} columns, n ≤ {max_n}"),
            check: format!("{columns}-column pde"),
            ok: bad.is_empty(),
            detail: if bad.is_empty() {
                format!("{count} residuals vanish")
            } else {
                bad.join("; ")
            },
        });
    }
    let mut info = Vec::new();
    for shape in [vec![4usize], vec![4, 4]] {
        let p = Partition::new(shape.clone())?;
        let n = p.size();
        let mut zero = 0;
        let mut total = 0;
        for t in enumerate_tableaux(&p, &vec![1; n], TableauKind::Syt)? {
            for m in 1..=n {
                total += 1;
                if specht_pde_residual(&t, m, 4)?.is_zero() {
                    zero += 1;
                }
            }
        }
        info.push(json!({ "shape": shape, "vanishing": zero, "total": total }));
    }
    Ok((lines, json!({ "four_column_informational": info })))
}

pub fn verify(sigma: Option<&str>, which: Which, seed: u64, nonrectangular: bool, max_n: usize) -> CliResult {
    let config = json!({
        "sigma": sigma,
        "which": which,
        "seed": seed,
        "nonrectangular": nonrectangular,
        "max_n": max_n,
    });
    let needs_sigma = !matches!(which, Which::SpechtPde) && !(nonrectangular && which == Which::Ward);
    let sig = match sigma {
        Some(s) => Some(Signature::parse(s)?),
        None if needs_sigma => return Err("--sigma is required for this suite".into()),
        None => None,
    };
    let mut extra = Value::Null;
    let lines = match which {
        Which::Bpz => {
            let sig = sig.expect("checked");
            operator_lines(&sig, &(1..=sig.d()).map(Operator::Bpz).collect::<Vec<_>>(), seed)?
        }
        Which::Ward => {
            let mut lines = match &sig {
                Some(sig) => operator_lines(sig, &(1..=5).map(Operator::Ward).collect::<Vec<_>>(), seed)?,
                None => Vec::new(),
            };
            if nonrectangular {
                lines.extend(nonrectangular_lines(seed)?);
            }
            lines
        }
        Which::Global => operator_lines(
            &sig.expect("checked"),
            &(1..=3).map(Operator::GlobalWard).collect::<Vec<_>>(),
            seed,
        )?,
        Which::Covariance => {
            let sig = sig.expect("checked");
            let maps = seeded_mobius_maps(5, seed);
            let mut lines = Vec::new();
            for (i, t) in rsyt(&sig)?.iter().enumerate() {
                let a = block_exponents(t, &sig, false)?;
                for (k, phi) in maps.iter().enumerate() {
                    let pts = mobius_sample(phi, sig.d(), 25, seed.wrapping_add(k as u64));
                    lines.push(Line {
                        subject: format!("T{} {}", i + 1, t),
                        check: format!("mobius[{}]", k + 1),
                        ok: pts.len() == 25 && covariance_check(&a, phi, &pts)?,
                        detail: format!(
                            "({})x+({}) / ({})x+({}), {} points",
                            phi.a,
                            phi.b,
                            phi.c,
                            phi.d,
                            pts.len()
                        ),
                    });
                }
            }
            lines
        }
        Which::Asymptotics => {
            let sig = sig.expect("checked");
            let mut lines = Vec::new();
            for (i, t) in rsyt(&sig)?.iter().enumerate() {
                let a = block_exponents(t, &sig, false)?;
                for j in 1..sig.d() {
                    let lim = boundary_limit(&a, j)?;
                    let kind = match lim.limit {
                        sl3blocks::blocks::LimitValue::Zero => "zero",
                        sl3blocks::blocks::LimitValue::Trivial => "empty",
                        sl3blocks::blocks::LimitValue::Block(_) => "block",
                    };
                    lines.push(Line {
                        subject: format!("T{} {}", i + 1, t),
                        check: format!("collide {},{}", j, j + 1),
                        ok: boundary_limit_matches_tableau(t, &sig, j)?,
                        detail: format!("exponent {}, limit {kind}", lim.exponent),
                    });
                }
            }
            lines
        }
        Which::SpechtPde => {
            let (lines, info) = specht_lines(max_n)?;
            extra = info;
            lines
        }
        Which::Alpha => {
            let sig = sig.expect("checked");
            rsyt(&sig)?
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    let a = block_exponents(t, &sig, false)?;
                    let f = a.identity_failures();
                    Ok(Line {
                        subject: format!("T{} {}", i + 1, t),
                        check: "alpha identities".into(),
                        ok: f.is_empty(),
                        detail: if f.is_empty() {
                            "squares, row sums, homogeneity".into()
                        } else {
                            f.join("; ")
                        },
                    })
                })
                .collect::<Result<Vec<_>, Box<dyn Error>>>()?
        }
    };
    Ok(verify_report(config, lines, extra))
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", inner.join(", "))
}

pub fn webs(sigma: &str) -> CliResult {
    let sig = Signature::parse(sigma)?;
    let basis = matrix_m(&sig)?;
    let m: Vec<Vec<String>> = basis
        .m
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    let mi: Vec<Vec<String>> = basis
        .m_inv
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    let mut text = String::new();
    for (i, t) in basis.tableaux.iter().enumerate() {
        writeln!(text, "T{}: {}", i + 1, t)?;
    }
    for (i, w) in basis.webs.iter().enumerate() {
        writeln!(
            text,
            "λ{}: {} internal vertices, {} edges",
            i + 1,
            w.num_internal(),
            w.num_edges()
        )?;
    }
    writeln!(text, "M = {}", matrix_text(&m))?;
    writeln!(text, "M⁻¹ = {}", matrix_text(&mi))?;
    Ok(Report {
        command: "webs",
        config: json!({ "sigma": sig.s() }),
        result: json!({
            "tableaux": basis.tableaux.iter().map(rows_json).collect::<Vec<_>>(),
            "M": basis.m_as_i64(),
            "M_inv": mi,
            "webs": basis.webs.iter().map(WebJson::from).collect::<Vec<_>>(),
        }),
        text,
        passed: true,
    })
}

pub fn prob(sigma: &str, tableau: usize, points: &str) -> CliResult {
    let sig = Signature::parse(sigma)?;
    let x = points
        .split(',')
        .map(|p| BigRational::from_str(p.trim()).map_err(|e| format!("bad point `{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let basis = matrix_m(&sig)?;
    let mut text = String::new();
    let mut values = Vec::new();
    let mut total = BigRational::from_integer(0.into());
    for l in 1..=basis.size() {
        let p = limit_probability(&basis, l, tableau, &x)?;
        writeln!(text, "λ{l}: {p}")?;
        total += &p;
        values.push(json!({ "lambda": l, "p": p.to_string() }));
    }
    writeln!(text, "sum: {total}")?;
    Ok(Report {
        command: "prob",
        config: json!({
            "sigma": sig.s(),
            "tableau": tableau,
            "points": x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
        result: json!({ "probabilities": values, "sum": total.to_string() }),
        passed: total == BigRational::from_integer(1.into()),
        text,
    })
}

pub fn dimer(
    sigma: &str,
    sizes: &[usize],
    tableau: Option<usize>,
    backend: BackendArg,
    s_mode: SModeArg,
) -> CliResult {
    let sig = Signature::parse(sigma)?;
    let t = match tableau {
        Some(t) => t,
        None => kostka(&sig.pi(), &sig.content())?,
    };
    let mode = match s_mode {
        SModeArg::LastK => SMode::LastK,
        SModeArg::ValenceTwo => SMode::ValenceTwo,
    };
    let be = match backend {
        BackendArg::Exact => Backend::Exact,
        BackendArg::Float => Backend::Float,
    };
    let study = convergence_study(&sig, t, sizes, mode, be)?;
    let passed = study.errors_shrink()
        && study
            .rows
            .iter()
            .all(|r| (-1e-12..=1.0 + 1e-12).contains(&r.finite_pr));
    Ok(Report {
        command: "dimer",
        config: json!({
            "sigma": sig.s(),
            "sizes": sizes,
            "tableau": t,
            "backend": backend,
            "s_mode": s_mode,
        }),
        result: json!({ "rows": study.rows, "errors_shrink": study.errors_shrink() }),
        text: study.to_csv(),
        passed,
    })
}
