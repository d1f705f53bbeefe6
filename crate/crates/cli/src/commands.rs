use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use avail_core::bounds::{self, BoundResult};
use avail_core::constructions::{
    build_partition_family, functional_code, partition_code, product_code, projective_functionals,
};
use avail_core::lp::{lp_dimension_bound, LpOptions, SolverMode};
use avail_core::report::{emit_figure_data, FigureSpec};
use avail_core::verification::{
    check_availability, check_strict_availability, dual_ghw_bruteforce, greedy_cover,
    min_distance_bruteforce, TieBreak,
};
use avail_core::{AvailabilityCode, CodeKind, Error, FiniteField};
use serde_json::{json, Value};

use crate::args::*;
use crate::io;

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Bounds(b) => {
            let value = match b {
                BoundsCommand::Rate(a) => rate(&a)?,
                BoundsCommand::Dmin(a) => dmin(&a)?,
                BoundsCommand::Lp(a) => lp(&a)?,
                BoundsCommand::Dim(a) => {
                    let b = bounds::dim_huang(a.q, a.n, a.d, a.r, a.t, &bounds::k_opt_griesmer)?;
                    serde_json::to_value(b)?
                }
            };
            print_json(&value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct(c) => construct(c),
        Command::Verify(a) => verify(&a),
        Command::Analyze(a) => analyze(&a),
        Command::Figure(a) => figure(&a),
    }
}

fn print_json(v: &Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

/// A single method prints one object. `all` prints the applicable bounds and
/// lists the rest under `skipped`.
fn collect(methods: Vec<(&str, avail_core::Result<BoundResult>)>) -> Result<Value> {
    if let [(_, single)] = &methods[..] {
        return match single {
            Ok(b) => Ok(serde_json::to_value(b)?),
            Err(e) => Err(anyhow!(e.clone())),
        };
    }
    let mut found = Vec::new();
    let mut skipped = Vec::new();
    let mut first_err = None;
    for (name, res) in methods {
        match res {
            Ok(b) => found.push(serde_json::to_value(b)?),
            Err(e) => {
                skipped.push(json!({ "method": name, "reason": e.to_string() }));
                first_err.get_or_insert(e);
            }
        }
    }
    if found.is_empty() {
        if let Some(e) = first_err {
            return Err(e.into());
        }
    }
    Ok(json!({ "bounds": found, "skipped": skipped }))
}

fn rate(a: &RateArgs) -> Result<Value> {
    let (r, t) = (a.r, a.t);
    let greedy = || match a.n {
        Some(n) if t == 3 => bounds::rate_greedy_t3(n, r).map(|(b, _)| b),
        Some(_) => Err(Error::InvalidParameter("greedy-t3 needs t = 3".into())),
        None => Err(Error::InvalidParameter("greedy-t3 needs --n".into())),
    };
    let methods = match a.method {
        RateMethod::TamoBarg => vec![("tamo-barg", bounds::rate_tamo_barg(r, t))],
        RateMethod::Prime => vec![("prime", bounds::rate_prime(r, t))],
        RateMethod::Transpose => vec![("transpose", bounds::rate_transpose(r, t))],
        RateMethod::GreedyT3 => vec![("greedy-t3", greedy())],
        RateMethod::Wzl => vec![("wzl", bounds::rate_wzl_achievable(r, t))],
        RateMethod::All => vec![
            ("tamo-barg", bounds::rate_tamo_barg(r, t)),
            ("prime", bounds::rate_prime(r, t)),
            ("transpose", bounds::rate_transpose(r, t)),
            ("greedy-t3", greedy()),
            ("wzl", bounds::rate_wzl_achievable(r, t)),
        ],
    };
    collect(methods)
}

fn dmin(a: &DminArgs) -> Result<Value> {
    let (n, k, r, t) = (a.n, a.k, a.r, a.t);
    let m_delta = || {
        let m = a.m.or(n.checked_sub(k)).unwrap_or(0);
        bounds::dmin_m_delta(n, k, r, t, m, a.delta)
    };
    let methods = match a.method {
        DminMethod::TamoBarg => vec![("tamo-barg", bounds::dmin_tamo_barg(n, k, r, t))],
        DminMethod::Wang => vec![("wang", bounds::dmin_wang(n, k, r, t))],
        DminMethod::Shortening => vec![("shortening", bounds::dmin_shortening_simple(n, k, r, t))],
        DminMethod::MDelta => vec![("m-delta", m_delta())],
        DminMethod::MDeltaMax => vec![("m-delta-max", bounds::dmin_m_delta_max(n, k, r, t))],
        DminMethod::All => vec![
            ("tamo-barg", bounds::dmin_tamo_barg(n, k, r, t)),
            ("wang", bounds::dmin_wang(n, k, r, t)),
            ("shortening", bounds::dmin_shortening_simple(n, k, r, t)),
            ("m-delta", m_delta()),
            ("m-delta-max", bounds::dmin_m_delta_max(n, k, r, t)),
        ],
    };
    collect(methods)
}

fn lp(a: &LpArgs) -> Result<Value> {
    let opts = LpOptions {
        mode: if a.float {
            SolverMode::Float
        } else {
            SolverMode::Exact
        },
        strengthen: a.strengthen,
        pivot_limit: a.pivot_limit,
    };
    let res = lp_dimension_bound(a.q, a.n, a.r, a.t, opts)?;
    let sol = &res.solution;
    let weights: Vec<Value> = sol
        .a
        .iter()
        .enumerate()
        .map(|(v, x)| {
            let exact = sol.a_exact.as_ref().map(|e| bounds::format_ratio(&e[v]));
            json!({ "weight": a.t + 1 + v as u64, "value": x, "exact": exact })
        })
        .collect();
    Ok(json!({
        "bound": res.bound,
        "codewords": sol.codewords,
        "codewords_exact": sol.codewords_exact.as_ref().map(bounds::format_ratio),
        "a": weights,
    }))
}

fn construct(c: ConstructCommand) -> Result<ExitCode> {
    let (code, out) = match c {
        ConstructCommand::Partition(a) => {
            let family = build_partition_family(a.r, a.g)?;
            (partition_code(&family, a.t, a.choice.as_deref())?, a.out)
        }
        ConstructCommand::Functional(a) => {
            let field = FiniteField::new(a.q)?;
            let maps = projective_functionals(&field, a.t)?;
            (functional_code(&field, 2, 1, &maps)?, a.out)
        }
        ConstructCommand::Product(a) => (product_code(a.r, a.t)?, a.out),
    };
    let mut report = json!({ "code": code.sidecar() });
    match &out.output {
        Some(path) => {
            let (m, s) = io::write_code(&code, path)?;
            report["files"] = json!({ "matrix": m, "sidecar": s });
        }
        None => report["matrix"] = json!(code.h().to_string()),
    }
    print_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn load(input: &CodeInput) -> Result<(avail_core::BitMatrix, Option<usize>, Option<usize>)> {
    let h = io::read_matrix(&input.input)?;
    let side = io::read_sidecar(&input.input)?;
    let r = input.r.or(side.as_ref().map(|s| s.r));
    let t = input.t.or(side.as_ref().map(|s| s.t));
    Ok((h, r, t))
}

fn code_summary(code: &AvailabilityCode) -> Value {
    json!({
        "n": code.n(),
        "m": code.m(),
        "rank": code.n() - code.k(),
        "k": code.k(),
    })
}

fn verify(a: &VerifyArgs) -> Result<ExitCode> {
    let (h, r, t) = load(&a.code)?;
    let (Some(r), Some(t)) = (r, t) else {
        bail!("--r and --t are required when no sidecar is present");
    };
    let (check, pass) = if a.strict {
        let rep = check_strict_availability(&h, r, t);
        let pass = rep.pass;
        (json!({ "strict": rep }), pass)
    } else {
        let rep = check_availability(&h, r, t);
        let pass = rep.pass;
        (json!({ "availability": rep }), pass)
    };
    let kind = if pass && a.strict {
        CodeKind::Strict
    } else {
        CodeKind::General
    };
    let code = AvailabilityCode::new(h, r, t, kind);
    print_json(&json!({ "code": code_summary(&code), "checks": check, "pass": pass }))?;
    if pass {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed");
        Ok(ExitCode::FAILURE)
    }
}

fn analyze(a: &AnalyzeArgs) -> Result<ExitCode> {
    let (h, r, t) = load(&a.code)?;
    let strict = match (r, t) {
        (Some(r), Some(t)) => Some(check_strict_availability(&h, r, t)),
        _ => None,
    };
    let kind = match &strict {
        Some(s) if s.pass => CodeKind::Strict,
        _ => CodeKind::General,
    };
    let code = AvailabilityCode::new(h, r.unwrap_or(0), t.unwrap_or(0), kind);
    let mut summary = code_summary(&code);
    let (n, k) = (code.n() as u64, code.k() as u64);
    summary["rate"] = json!(code.rate());

    let distance = if a.dmin {
        let d = min_distance_bruteforce(&code)?;
        summary["d"] = json!(d);
        d.finite()
    } else {
        None
    };
    if let Some(i) = a.ghw {
        summary["ghw_dual"] = json!(dual_ghw_bruteforce(&code, i)?);
    }
    let mut report = json!({ "code": summary });

    if let (Some(r), Some(t), Some(strict)) = (r, t, strict) {
        let avail = check_availability(code.h(), r, t);
        report["checks"] = json!({ "strict": strict, "availability": avail });
        let (r, t) = (r as u64, t as u64);
        let mut bounds = Vec::new();
        let mut push = |res: avail_core::Result<BoundResult>, measured: u64, is_rate: bool| {
            if let Ok(b) = res {
                let holds = match (&b.exact, is_rate) {
                    (Some(x), true) => x.numer() * n >= x.denom() * k,
                    _ => b.value + 1e-9 >= measured as f64,
                };
                let mut v = serde_json::to_value(&b).expect("bound serializes");
                v["holds"] = json!(holds);
                bounds.push(v);
            }
        };
        push(bounds::rate_tamo_barg(r, t), k, true);
        if t >= 2 {
            push(bounds::rate_prime(r, t), k, true);
            push(bounds::rate_transpose(r, t), k, true);
        }
        if let Some(d) = distance.filter(|_| k >= 1) {
            let d = d as u64;
            push(bounds::dmin_tamo_barg(n, k, r, t), d, false);
            push(bounds::dmin_wang(n, k, r, t), d, false);
            if t >= 2 {
                push(bounds::dmin_shortening_simple(n, k, r, t), d, false);
                push(bounds::dmin_m_delta(n, k, r, t, n - k, 3), d, false);
            }
            push(
                bounds::dim_huang(2, n, d, r, t, &bounds::k_opt_griesmer),
                k,
                false,
            );
        }
        report["bounds"] = json!(bounds);
    }

    if a.greedy {
        let tie = a.seed.map_or(TieBreak::Deterministic, TieBreak::Random);
        let trace = greedy_cover(&code, a.start, tie).context("greedy cover")?;
        report["trace"] = json!(trace);
    }
    print_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn figure(a: &FigureArgs) -> Result<ExitCode> {
    let mut spec = FigureSpec::new(a.id);
    let (lo, hi) = a.id.default_range();
    spec = spec.with_range(
        a.rmin.unwrap_or(lo),
        a.rmax.unwrap_or(hi.max(a.rmin.unwrap_or(lo))),
    );
    if let Some(b) = a.budget {
        spec.lp_max_r = b;
    }
    let table = emit_figure_data(&spec)?;
    match &a.output {
        Some(path) => {
            let p = io::write_text(path, &table.to_csv_string())?;
            eprintln!("wrote {}", p.display());
        }
        None => table.write_csv(std::io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}
