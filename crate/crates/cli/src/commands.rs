use std::collections::BTreeSet;
use std::fmt::Write;

use biquad::arith::{find_prime_with, ArithError, CongruenceConstraint, Limits, SquareClass};
use biquad::decomp::{
    certify_a, diagram_solvable, embedding_solvable, ranks_theorem1, AMembership, AnalyzeOptions,
    CoefficientMatrix, DecompositionReport, Epsilon, EpsilonStatus,
};
use biquad::local::{hilbert_symbol, quaternion_class, relevant_places, Place};
use biquad::tower::BiquadField;
use serde_json::{json, Value};

use crate::report::{join, sign, table, Output, Report, Status};
use crate::CliError;

fn class(n: i128, limits: &Limits) -> Result<SquareClass, CliError> {
    Ok(SquareClass::from_int_with_bound(n, limits.factor_bound)?)
}

fn field(a1: i128, a2: i128, limits: &Limits) -> Result<BiquadField, CliError> {
    Ok(BiquadField::from_ints_with_bound(
        a1,
        a2,
        limits.factor_bound,
    )?)
}

fn field_name(k: &BiquadField) -> String {
    format!("Q(√{}, √{})", k.a1(), k.a2())
}

pub fn hilbert(
    command: String,
    a: i128,
    b: i128,
    place: Option<Place>,
    limits: &Limits,
) -> Result<Output, CliError> {
    let (ca, cb) = (class(a, limits)?, class(b, limits)?);
    let ramified = quaternion_class(&ca, &cb)?;
    let places: Vec<Place> = match place {
        Some(v) => vec![v],
        None => relevant_places([&ca, &cb]).into_iter().collect(),
    };
    let symbols: Vec<(Place, i8)> = places
        .iter()
        .map(|&v| (v, hilbert_symbol(&ca, &cb, v)))
        .collect();

    let mut text = String::new();
    match place {
        Some(v) => writeln!(text, "({ca},{cb})_{v} = {}", symbols[0].1).unwrap(),
        None => {
            let mut rows = vec![vec!["place".to_string(), format!("({ca},{cb})_v")]];
            rows.extend(
                symbols
                    .iter()
                    .map(|(v, s)| vec![v.to_string(), sign(*s).to_string()]),
            );
            text.push_str(&table(&rows));
        }
    }
    writeln!(text, "ramified: {ramified}").unwrap();

    let report = Report {
        command,
        inputs: json!({ "a": ca, "b": cb, "place": place }),
        results: json!({
            "symbols": symbols.iter().map(|(v, s)| json!({ "place": v, "symbol": s })).collect::<Vec<_>>(),
            "ramified": ramified,
        }),
        witnesses: Value::Null,
        warnings: vec![],
    };
    Ok(Output {
        report,
        text,
        status: Status::Ok,
    })
}

pub struct AnalyzeArgs {
    pub a1: i128,
    pub a2: i128,
    pub support: Vec<u64>,
    pub epsilon: Option<u8>,
    pub bound: u32,
    pub eps_bound: Option<u32>,
}

pub fn analyze(command: String, args: AnalyzeArgs, limits: &Limits) -> Result<Output, CliError> {
    let k = field(args.a1, args.a2, limits)?;
    let eps = match args.epsilon {
        None => Epsilon::Unknown,
        Some(0) => Epsilon::Zero,
        Some(1) => Epsilon::One,
        Some(e) => return Err(CliError::Usage(format!("epsilon must be 0 or 1, got {e}"))),
    };
    let opts = AnalyzeOptions {
        norm_bound: args.bound,
        epsilon_bound: args.eps_bound,
        ..AnalyzeOptions::default()
    };
    let r = ranks_theorem1(&k, args.support.iter().copied(), eps, &opts)?;
    let text = analyze_text(&k, &r);

    let mut results = serde_json::to_value(&r).expect("reports serialize");
    let obj = results.as_object_mut().expect("reports are objects");
    let witnesses = obj.remove("witnesses").unwrap_or(Value::Null);
    obj.remove("warnings");
    let report = Report {
        command,
        inputs: json!({
            "a1": k.a1(),
            "a2": k.a2(),
            "support": r.support,
            "epsilon": eps,
            "bound": args.bound,
            "eps_bound": args.eps_bound,
        }),
        results,
        witnesses,
        warnings: r.warnings.clone(),
    };
    Ok(Output {
        report,
        text,
        status: Status::Ok,
    })
}

fn analyze_text(k: &BiquadField, r: &DecompositionReport) -> String {
    let mut t = String::new();
    writeln!(t, "field    {}", field_name(k)).unwrap();
    writeln!(t, "support  {{{}}}", join(&r.support, ", ")).unwrap();
    writeln!(t, "dim S    {}", r.dim_s).unwrap();

    let places: Vec<Place> = k.relevant_places().into_iter().collect();
    let mut header = vec!["generator".to_string()];
    header.extend(places.iter().map(Place::to_string));
    header.push("independent".into());
    let mut rows = vec![header];
    for g in &r.s_basis {
        let mut row = vec![g.name.clone()];
        row.extend(
            places
                .iter()
                .map(|&v| sign(g.class.local_symbol(v)).to_string()),
        );
        row.push(if g.independent { "yes" } else { "no" }.into());
        rows.push(row);
    }
    for line in table(&rows).lines() {
        writeln!(t, "  {line}").unwrap();
    }

    writeln!(t, "im(T)    {}", r.t_image).unwrap();
    writeln!(t, "X        {}", r.x_type).unwrap();
    let eps = match &r.epsilon {
        EpsilonStatus::Zero => "0 (given)".to_string(),
        EpsilonStatus::One => "1 (given)".to_string(),
        EpsilonStatus::Unknown => "unknown".to_string(),
        EpsilonStatus::CertifiedZero(w) => {
            format!(
                "0 (certified by k1 = {}, k2 = {})",
                k.format(&w.k1),
                k.format(&w.k2)
            )
        }
    };
    writeln!(t, "epsilon  {eps}").unwrap();

    let w = &r.witnesses;
    let y0: Vec<String> =
        w.y0.iter()
            .map(|n| format!("{} = N({})", n.norm, k.format(&n.element)))
            .collect();
    let lists: [Vec<String>; 7] = [
        y0,
        w.y1.iter().map(ToString::to_string).collect(),
        w.y2.iter().map(ToString::to_string).collect(),
        w.y3.iter().map(ToString::to_string).collect(),
        w.y4.iter().map(ToString::to_string).collect(),
        w.z1.iter().map(ToString::to_string).collect(),
        w.z2.iter().map(ToString::to_string).collect(),
    ];
    let mut rows = vec![vec!["rank".to_string(), "value".into(), "witnesses".into()]];
    for ((name, rank), ws) in r.ranks.named().iter().zip(&lists) {
        rows.push(vec![name.to_string(), rank.to_string(), ws.join(", ")]);
    }
    writeln!(t, "ranks").unwrap();
    for line in table(&rows).lines() {
        writeln!(t, "  {line}").unwrap();
    }
    if !w.a_undetermined.is_empty() {
        writeln!(
            t,
            "local norms without a norm witness: {}",
            join(&w.a_undetermined, ", ")
        )
        .unwrap();
    }

    let d = &r.dims;
    writeln!(
        t,
        "dimensions modulo <a1,a2>: ambient {}, B {}, C {}, D {}, V {}, W_B {}, W_C {}, W_D {}, B+C+D {}, local norms {}, certified norms {}",
        d.ambient, d.b, d.c, d.d, d.v, d.w_b, d.w_c, d.w_d, d.b_plus_c_plus_d, d.local_norms, d.a_certified
    )
    .unwrap();
    for warning in &r.warnings {
        writeln!(t, "warning: {warning}").unwrap();
    }
    t
}

pub fn embed(
    command: String,
    gens: &[i128],
    c: &[u8],
    limits: &Limits,
) -> Result<Output, CliError> {
    let classes = gens
        .iter()
        .map(|&g| class(g, limits))
        .collect::<Result<Vec<_>, _>>()?;
    let bits = c
        .iter()
        .map(|&b| match b {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(CliError::Usage(format!(
                "coefficients must be 0 or 1, got {b}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let out = embedding_solvable(
        &classes,
        &CoefficientMatrix::new(classes.len(), bits.clone())?,
    )?;
    let text = format!(
        "generators   {}\nsolvable     {}\nobstruction  {}\n",
        join(&classes, ", "),
        if out.solvable { "yes" } else { "no" },
        out.obstruction
    );
    let report = Report {
        command,
        inputs: json!({ "generators": classes, "coefficients": bits }),
        results: json!({ "solvable": out.solvable, "obstruction": out.obstruction }),
        witnesses: Value::Null,
        warnings: vec![],
    };
    Ok(Output {
        report,
        text,
        status: Status::Ok,
    })
}

pub fn find_prime(
    command: String,
    constraints: &[(u64, Vec<i64>)],
    min: u64,
    exclude: &[u64],
    limits: &Limits,
) -> Result<Output, CliError> {
    let cs = constraints
        .iter()
        .map(|(m, rs)| CongruenceConstraint::new(*m, rs.iter().copied()))
        .collect::<Result<Vec<_>, _>>()?;
    let excluded: BTreeSet<u64> = exclude.iter().copied().collect();
    let (prime, status, warnings) = match find_prime_with(&cs, min, &excluded, limits.search_cap) {
        Ok(p) => (Some(p), Status::Ok, vec![]),
        Err(e @ ArithError::SearchBoundExceeded { .. }) => {
            (None, Status::Empty, vec![e.to_string()])
        }
        Err(e) => return Err(e.into()),
    };
    let mut text = match prime {
        Some(p) => format!("{p}\n"),
        None => "no prime found\n".to_string(),
    };
    for w in &warnings {
        writeln!(text, "warning: {w}").unwrap();
    }
    let inputs: Vec<Value> = cs
        .iter()
        .map(|c| json!({ "modulus": c.modulus(), "residues": c.allowed() }))
        .collect();
    let report = Report {
        command,
        inputs: json!({ "constraints": inputs, "min": min, "exclude": excluded }),
        results: json!({ "prime": prime }),
        witnesses: Value::Null,
        warnings,
    };
    Ok(Output {
        report,
        text,
        status,
    })
}

pub fn diagram(
    command: String,
    a1: i128,
    a2: i128,
    f: i128,
    g: i128,
    limits: &Limits,
) -> Result<Output, CliError> {
    let k = field(a1, a2, limits)?;
    let (cf, cg) = (class(f, limits)?, class(g, limits)?);
    let solvable = diagram_solvable(&k, &cf, &cg)?;
    let obstruction = quaternion_class(k.a1(), &cf)? + quaternion_class(k.a2(), &cg)?;
    let text = format!(
        "field          {}\n(a1,f)+(a2,g)  {}\nsolvable       {}\n",
        field_name(&k),
        obstruction,
        if solvable { "yes" } else { "no" }
    );
    let report = Report {
        command,
        inputs: json!({ "a1": k.a1(), "a2": k.a2(), "f": cf, "g": cg }),
        results: json!({ "solvable": solvable, "class": obstruction }),
        witnesses: Value::Null,
        warnings: vec![],
    };
    Ok(Output {
        report,
        text,
        status: Status::Ok,
    })
}

pub fn norm_search(
    command: String,
    a1: i128,
    a2: i128,
    target: i128,
    bound: u32,
    limits: &Limits,
) -> Result<Output, CliError> {
    let k = field(a1, a2, limits)?;
    let f = class(target, limits)?;
    let membership = certify_a(&k, &f, bound)?;
    let mut warnings = vec![];
    let (status, verdict, witness, text) = match &membership {
        AMembership::Member(w) => (
            Status::Ok,
            "member",
            json!(w),
            format!(
                "member: N({}) = {}, in the class of {f} modulo <{}, {}>\n",
                k.format(&w.element),
                w.norm,
                k.a1(),
                k.a2()
            ),
        ),
        AMembership::NonMember(obs) => {
            let mut t = String::from("not a norm: every representative is obstructed\n");
            let mut rows = vec![vec![
                "representative".to_string(),
                "symbol".into(),
                "class".into(),
            ]];
            for o in obs {
                let name = match o.subfield {
                    biquad::tower::Subfield::K1 => format!("(a1, {})", &f * &o.multiplier),
                    biquad::tower::Subfield::K2 => format!("(a2, {})", &f * &o.multiplier),
                    biquad::tower::Subfield::K3 => format!("(a3, {})", &f * &o.multiplier),
                };
                rows.push(vec![
                    (&f * &o.multiplier).to_string(),
                    name,
                    o.class.to_string(),
                ]);
            }
            t.push_str(&table(&rows));
            (Status::Ok, "non_member", json!(obs), t)
        }
        AMembership::Undetermined => {
            warnings.push(format!(
                "no norm witness with coordinates bounded by {bound}"
            ));
            (
                Status::Empty,
                "undetermined",
                Value::Null,
                format!("undetermined: no witness within bound {bound}\n"),
            )
        }
    };
    let report = Report {
        command,
        inputs: json!({ "a1": k.a1(), "a2": k.a2(), "target": f, "bound": bound }),
        results: json!({ "membership": verdict }),
        witnesses: witness,
        warnings,
    };
    Ok(Output {
        report,
        text,
        status,
    })
}
