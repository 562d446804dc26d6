use anyhow::{bail, Result};
use serde::Serialize;
use serde_json::json;
use toric_matroids::catalog::find_excluded_minor;
use toric_matroids::exchange::{check_white_gb, default_order, default_white_orders, symmetric_exchange_set};
use toric_matroids::gb::{self, groebner_witness, reduces_to_zero};
use toric_matroids::lift::{self, Construction};
use toric_matroids::matroid::has_minor;
use toric_matroids::oracle::{bases_matrix, toric_gb};
use toric_matroids::{Matroid, MonomialOrder};

use crate::args::{Command, ConstructCmd, ConstructOpts, IdealCmd, MatroidCmd, Method, MinorCmd, Pair, WhiteCmd};
use crate::input::{load_matroid, load_set, parse_order, parse_steps};

/// Text to emit, and a message when a verification failed (exit 1).
pub struct Outcome {
    pub output: String,
    pub failure: Option<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, failure: None }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}

fn matroid_file(m: &Matroid) -> Outcome {
    Outcome::ok(m.to_json())
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Matroid(c) => matroid(c),
        Command::Ideal(c) => ideal(c),
        Command::White(c) => white(c),
        Command::Construct(c) => construct(c),
        Command::Minor(c) => minor(c),
        Command::Catalog { spec } => Ok(matroid_file(&load_matroid(spec)?)),
    }
}

fn matroid(cmd: &MatroidCmd) -> Result<Outcome> {
    Ok(match cmd {
        MatroidCmd::Validate { matroid } => matroid_file(&load_matroid(matroid)?),
        MatroidCmd::Info { matroid } => {
            let m = load_matroid(matroid)?;
            let class = m.classify_elements();
            Outcome::ok(pretty(&json!({
                "d": m.ground_size(),
                "rank": m.rank(),
                "bases": m.num_bases(),
                "loops": class.loops.to_vec(),
                "coloops": class.coloops.to_vec(),
            })))
        }
        MatroidCmd::Dual { matroid } => matroid_file(&load_matroid(matroid)?.dual()),
        MatroidCmd::Delete { matroid, at } => matroid_file(&load_matroid(matroid)?.delete(*at)?),
        MatroidCmd::Contract { matroid, at } => matroid_file(&load_matroid(matroid)?.contract(*at)?),
        MatroidCmd::DirectSum { first, second } => {
            matroid_file(&load_matroid(first)?.direct_sum(&load_matroid(second)?)?)
        }
        MatroidCmd::Connectivity { matroid, n } => {
            if *n < 2 {
                bail!("--n must be at least 2");
            }
            let m = load_matroid(matroid)?;
            let sep = m.find_separation(*n);
            Outcome::ok(pretty(&json!({
                "n": n,
                "connected": sep.is_none(),
                "separation": sep.map(|(k, x)| json!({"k": k, "side": x.to_vec()})),
            })))
        }
    })
}

fn ideal(cmd: &IdealCmd) -> Result<Outcome> {
    match cmd {
        IdealCmd::Gens { matroid, method, order } => {
            let m = load_matroid(matroid)?;
            let set = match method {
                Method::Exchange => {
                    let set = symmetric_exchange_set(&m).binomials;
                    match order {
                        Some(_) => set.oriented(&parse_order(order.as_deref(), &m)?)?,
                        None => set,
                    }
                }
                Method::Oracle => toric_gb(&bases_matrix(&m), &parse_order(order.as_deref(), &m)?)?,
            };
            Ok(Outcome::ok(pretty(&set)))
        }
        IdealCmd::Gb { matroid, method, order } => {
            let m = load_matroid(matroid)?;
            let o = parse_order(order.as_deref(), &m)?;
            let set = match method {
                Method::Exchange => gb::buchberger(&symmetric_exchange_set(&m).binomials, &o)?,
                Method::Oracle => toric_gb(&bases_matrix(&m), &o)?,
            };
            Ok(Outcome::ok(pretty(&set)))
        }
        IdealCmd::Equal { first, second } => {
            let (a, b) = (load_set(first)?, load_set(second)?);
            let order = MonomialOrder::degrevlex(a.ambient().iter().copied().collect());
            let equal = gb::ideals_equal(&a, &b, &order)?;
            Ok(Outcome {
                output: pretty(&json!({ "equal": equal })),
                failure: (!equal).then(|| "the two sets generate different ideals".to_string()),
            })
        }
    }
}

fn white(cmd: &WhiteCmd) -> Result<Outcome> {
    match cmd {
        WhiteCmd::CheckGen { matroid } => {
            let m = load_matroid(matroid)?;
            let set = symmetric_exchange_set(&m);
            let order = default_order(&m);
            let truth = toric_gb(&bases_matrix(&m), &order)?;
            let generates = gb::ideals_equal(&set.binomials, &truth, &order)?;
            let failure = if generates {
                None
            } else {
                let gb = gb::buchberger(&set.binomials, &order)?;
                let missing = truth.iter().find(|t| !reduces_to_zero(t, &gb, &order).unwrap_or(false));
                Some(format!(
                    "exchange binomials miss {}",
                    missing.map_or("an oracle element".to_string(), |t| t.to_string())
                ))
            };
            Ok(Outcome {
                output: pretty(&json!({ "generates": generates, "witnesses": set.witnesses })),
                failure,
            })
        }
        WhiteCmd::CheckGb { matroid } => {
            let m = load_matroid(matroid)?;
            let found = check_white_gb(&m, &default_white_orders(&m))?;
            Ok(Outcome {
                failure: found
                    .is_none()
                    .then(|| "no order in the default list makes the exchange binomials a Gröbner basis (inconclusive)".into()),
                output: pretty(&json!({ "order": found.map(|o| o.spec()) })),
            })
        }
    }
}

fn minor(cmd: &MinorCmd) -> Result<Outcome> {
    Ok(match cmd {
        MinorCmd::Has { matroid, target } => {
            let has = has_minor(&load_matroid(matroid)?, &load_matroid(target)?);
            Outcome::ok(pretty(&json!({ "has_minor": has })))
        }
        MinorCmd::ExcludedFree { matroid } => {
            let found = find_excluded_minor(&load_matroid(matroid)?);
            Outcome::ok(pretty(&json!({
                "excluded_minor_free": found.is_none(),
                "minor": found.map(|n| n.to_string()),
            })))
        }
    })
}

/// A factor with generators and (for the oracle) the order they are a Gröbner basis for.
fn factor(m: &Matroid, opts: &ConstructOpts) -> Result<Construction> {
    Ok(match opts.method {
        Method::Oracle => {
            let o = parse_order(opts.order.as_deref(), m)?;
            let f = toric_gb(&bases_matrix(m), &o)?;
            Construction::from_matroid(m, f, Some(o))
        }
        Method::Exchange => {
            let o = opts.order.as_deref().map(|s| parse_order(Some(s), m)).transpose()?;
            Construction::from_matroid(m, symmetric_exchange_set(m).binomials, o)
        }
    })
}

fn pair_args(p: &Pair) -> Result<(Construction, usize, Construction, usize)> {
    let [c1, c2] = p.at[..] else {
        bail!("give exactly two --at basepoints, one per matroid");
    };
    let a = factor(&load_matroid(&p.first)?, &p.opts)?;
    let b = factor(&load_matroid(&p.second)?, &p.opts)?;
    Ok((a, c1, b, c2))
}

fn construct(cmd: &ConstructCmd) -> Result<Outcome> {
    let (c, opts) = match cmd {
        ConstructCmd::SeriesExt { matroid, at, opts } => {
            let f = factor(&load_matroid(matroid)?, opts)?;
            (
                lift::series_extension_generators(&f.matroid, *at, &f.generators, f.order.as_ref())?,
                opts,
            )
        }
        ConstructCmd::ParallelExt { matroid, at, opts } => {
            let f = factor(&load_matroid(matroid)?, opts)?;
            (
                lift::parallel_extension_generators(&f.matroid, *at, &f.generators, f.order.as_ref())?,
                opts,
            )
        }
        ConstructCmd::SeriesConn(p) => {
            let (a, c1, b, c2) = pair_args(p)?;
            (lift::series_connection(&a, c1, &b, c2)?, &p.opts)
        }
        ConstructCmd::ParallelConn(p) => {
            let (a, c1, b, c2) = pair_args(p)?;
            (lift::parallel_connection(&a, c1, &b, c2)?, &p.opts)
        }
        ConstructCmd::TwoSum(p) => {
            let (a, c1, b, c2) = pair_args(p)?;
            (lift::two_sum(&a, c1, &b, c2)?, &p.opts)
        }
        ConstructCmd::SpSequence { matroid, steps, opts } => {
            let f = factor(&load_matroid(matroid)?, opts)?;
            let steps = parse_steps(steps)?;
            (
                lift::sp_extension_sequence(&f.matroid, &f.generators, f.order.as_ref(), &steps)?,
                opts,
            )
        }
    };
    finish(c, !opts.no_verify)
}

fn finish(mut c: Construction, verify: bool) -> Result<Outcome> {
    c.generators = match &c.order {
        Some(o) => c.generators.oriented(o)?,
        None => c.generators.canonicalized(),
    };
    let verified = if verify { Some(c.verify()?) } else { None };
    let output = pretty(&c.report(verified));
    let Some(v) = verified else {
        return Ok(Outcome::ok(output));
    };
    if !v.generates {
        return Ok(Outcome {
            output,
            failure: Some(mismatch(&c)?),
        });
    }
    if let (false, Some(o)) = (v.groebner, &c.order) {
        if let Some((f, g)) = groebner_witness(&c.generators, o)? {
            eprintln!("note: generators verified; Gröbner claim open, S-pair ({f}, {g}) does not reduce to zero");
        }
    }
    Ok(Outcome::ok(output))
}

/// Names an element on one side whose membership fails on the other.
fn mismatch(c: &Construction) -> Result<String> {
    let canon = c.canonical();
    let order = default_order(&c.matroid);
    let truth = toric_gb(&bases_matrix(&c.matroid), &order)?;
    for g in canon.generators.iter() {
        if !reduces_to_zero(g, &truth, &order)? {
            return Ok(format!("generator {g} is not in the toric ideal"));
        }
    }
    let gens = canon.generators.with_ambient(truth.ambient().clone())?;
    let gb = gb::buchberger(&gens, &order)?;
    for t in truth.iter() {
        if !reduces_to_zero(t, &gb, &order)? {
            return Ok(format!("toric ideal element {t} is not generated"));
        }
    }
    Ok("generated ideal differs from the toric ideal".into())
}
