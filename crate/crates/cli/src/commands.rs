use std::fs;

use cayleyrank::corpus::{self, CorpusSpec, Family, Generated};
use cayleyrank::experiments::{chain_sweep, gap_search, random_cube_sweep, subring_comparison, RandomCubeParams};
use cayleyrank::format::{self, Structure};
use cayleyrank::iso::{quasigroup_isomorphic, IsoMode, IsoVerdict};
use cayleyrank::membership::{
    bounded_subquasigroup_membership, cube_membership, subgroup_membership, submagma_membership,
    subring_closure, subring_membership, subring_membership_graph, subsemigroup_membership, BoundedVerdict,
    GraphLabels,
};
use cayleyrank::paren::{cube_eval, cube_table, eval_parenthesized};
use cayleyrank::rank::{
    lower_rank, membership_via_rank, quasigroup_cube_rank, quasigroup_rank_decision, rank_decision, ring_rank,
    verify_report, Decision, RankSearch, Witness,
};
use cayleyrank::variants::{rank_variant, RankVariant, VariantOutcome};
use cayleyrank::{Budget, CayleyTable, CubeIndex, ElementSequence, ElementSet, Error, Parenthesization, RingTable};
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::{Algo, Command, Experiment, Labels, Mode, VariantArg};

pub const BUDGET_ENV: &str = "CAYLEYRANK_BUDGET";

enum Failure {
    Core(Error),
    Io { path: String, message: String },
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, Value, u8), Failure>;

fn usage<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn error_json(f: &Failure) -> Value {
    match f {
        Failure::Core(Error::Ring(axiom)) => json!({
            "kind": "not-a-ring",
            "axiom": axiom.name(),
            "detail": axiom,
            "message": f_message(f),
        }),
        Failure::Core(Error::Parse { line, message }) => json!({
            "kind": "parse",
            "line": line,
            "message": message,
        }),
        Failure::Core(e) => json!({ "kind": core_kind(e), "message": e.to_string() }),
        Failure::Io { path, message } => json!({ "kind": "io", "path": path, "message": message }),
        Failure::Usage(message) => json!({ "kind": "usage", "message": message }),
    }
}

fn f_message(f: &Failure) -> String {
    match f {
        Failure::Core(e) => e.to_string(),
        Failure::Io { message, .. } | Failure::Usage(message) => message.clone(),
    }
}

fn core_kind(e: &Error) -> &'static str {
    match e {
        Error::EmptyTable | Error::RowCount { .. } | Error::RowLength { .. } | Error::ElementOutOfRange { .. } => {
            "invalid-table"
        }
        Error::OrderMismatch { .. } => "order-mismatch",
        Error::Parse { .. } => "parse",
        Error::LeafMismatch(_) => "leaf-mismatch",
        Error::Budget { .. } => "budget",
        Error::NotQuasigroup => "not-quasigroup",
        Error::NotAssociative => "not-associative",
        Error::NotGroup => "not-group",
        Error::InvalidArgument(_) => "invalid-argument",
        Error::Ring(_) => "not-a-ring",
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Classify { .. } => "classify",
        Command::Rank { .. } => "rank",
        Command::Member { .. } => "member",
        Command::RingRank { .. } => "ring-rank",
        Command::Iso { .. } => "iso",
        Command::Generate { .. } => "generate",
        Command::Experiment { .. } => "experiment",
    }
}

/// Runs a command and returns the JSON document and exit status.
pub fn run(cmd: &Command) -> (Value, u8) {
    let name = command_name(cmd);
    match dispatch(cmd) {
        Ok((input, result, code)) => (
            json!({ "command": name, "input": input, "result": result, "exit_code": code }),
            code,
        ),
        Err(f) => (json!({ "command": name, "error": error_json(&f), "exit_code": 1 }), 1),
    }
}

fn budget(flag: Option<u64>) -> Result<Budget, Failure> {
    let mut b = Budget::default();
    if let Ok(raw) = std::env::var(BUDGET_ENV) {
        match raw.trim().parse::<u64>() {
            Ok(nodes) => b.nodes = nodes,
            Err(_) => return usage(format!("{BUDGET_ENV} must be a nonnegative integer, got {raw:?}")),
        }
    }
    if let Some(nodes) = flag {
        b.nodes = nodes;
    }
    Ok(b)
}

fn load(path: &str) -> Result<Structure, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_string(),
        message: e.to_string(),
    })?;
    Ok(format::parse(&text)?)
}

fn load_table(path: &str) -> Result<CayleyTable, Failure> {
    match load(path)? {
        Structure::Table { table, .. } => Ok(table),
        Structure::Ring(_) => usage(format!("{path} holds a ring; this command needs a table")),
    }
}

fn load_ring(path: &str) -> Result<RingTable, Failure> {
    match load(path)? {
        Structure::Ring(r) => Ok(r),
        Structure::Table { .. } => usage(format!("{path} holds a table; this command needs a ring")),
    }
}

fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> Result<Vec<T>, Failure> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().or_else(|_| usage(format!("bad {what} entry {s:?}"))))
        .collect()
}

fn value_name(v: &impl ValueEnum) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn decision_code(d: &Decision) -> u8 {
    if d.answer().is_some() {
        0
    } else {
        2
    }
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Classify { file } => classify(file),
        Command::Rank {
            file,
            variant,
            k,
            max_len,
            max_subset,
            search,
        } => {
            let mut b = budget(search.budget)?;
            if let Some(m) = max_subset {
                b.rank_max_subset = *m;
            }
            let t = load_table(file)?;
            let input = json!({
                "file": file,
                "variant": value_name(variant),
                "k": k,
                "seed": search.seed,
                "tries": search.tries,
                "max_len": max_len,
                "budget": b,
            });
            let (result, code) = rank(&t, *variant, *k, *max_len, search.tries, search.seed, &b)?;
            Ok((input, result, code))
        }
        Command::Member {
            file,
            target,
            gens,
            algo,
            seq,
            tree,
            k,
            d,
            labels,
            budget: nodes,
        } => {
            let b = budget(*nodes)?;
            let gens: Vec<usize> = parse_list(gens, "generator")?;
            let input = json!({
                "file": file,
                "target": target,
                "gens": gens,
                "algo": value_name(algo),
                "seq": seq,
                "tree": tree,
                "k": k,
                "d": d,
            });
            let (result, code) = member(file, *target, &gens, *algo, seq.as_deref(), tree.as_deref(), *k, *d, *labels, &b)?;
            Ok((input, result, code))
        }
        Command::RingRank { file, budget: nodes } => {
            let b = budget(*nodes)?;
            let r = load_ring(file)?;
            let report = ring_rank(&r, &b)?;
            if let Witness::Set { elements } = &report.ring.witness {
                if !subring_closure(&r, elements).is_full() {
                    panic!("ring rank witness failed verification");
                }
            }
            let verified = verify_report(r.add_table(), &report.additive, b.cube_bits)
                && verify_report(r.mul_table(), &report.multiplicative, b.cube_bits);
            assert!(verified, "side rank witness failed verification");
            let exact = report.ring.exact && report.additive.exact && report.multiplicative.exact;
            let result = json!({
                "ring_rank": report.ring.rank,
                "additive_group_rank": report.additive.rank,
                "multiplicative_monoid_rank": report.multiplicative.rank,
                "reports": report,
                "verified": true,
            });
            Ok((json!({ "file": file, "budget": b }), result, if exact { 0 } else { 2 }))
        }
        Command::Iso {
            file_g,
            file_h,
            mode,
            search,
        } => {
            let b = budget(search.budget)?;
            let (g, h) = (load_table(file_g)?, load_table(file_h)?);
            let mode = match mode {
                Mode::Cube => IsoMode::Cube,
                Mode::Brute => IsoMode::Brute,
            };
            let verdict = quasigroup_isomorphic(&g, &h, mode, search.tries, search.seed, &b)?;
            if let IsoVerdict::Isomorphic { map, .. } = &verdict {
                assert!(g.is_isomorphism(&h, map), "isomorphism failed verification");
            }
            let code = if verdict.answer().is_some() { 0 } else { 2 };
            let input = json!({
                "file_g": file_g,
                "file_h": file_h,
                "mode": mode,
                "seed": search.seed,
                "tries": search.tries,
                "budget": b,
            });
            Ok((input, json!(verdict), code))
        }
        Command::Generate {
            family,
            params,
            seed,
            shuffle,
            out,
        } => generate(family, params, *seed, *shuffle, out.as_deref()),
        Command::Experiment {
            name,
            max_n,
            max_gens,
            orders,
            factors,
            instances,
            tries,
            samples,
            seed,
            budget: nodes,
        } => {
            let b = budget(*nodes)?;
            let (input, result) = match name {
                Experiment::Chain => {
                    let max_n = max_n.unwrap_or(10);
                    (json!({ "name": "chain", "max_n": max_n }), json!(chain_sweep(max_n, &b)?))
                }
                Experiment::RandomCubes => {
                    let p = RandomCubeParams {
                        orders: parse_list(orders, "order")?,
                        factors: parse_list(factors, "factor")?,
                        instances: *instances,
                        tries: *tries,
                        samples: *samples,
                        seed: *seed,
                    };
                    if p.orders.contains(&0) {
                        return usage("orders must be positive");
                    }
                    let rows = random_cube_sweep(&p, &b)?;
                    (json!({ "name": "random-cubes", "params": p }), json!({ "rows": rows }))
                }
                Experiment::Subring => {
                    let max_n = max_n.unwrap_or(16);
                    let c = subring_comparison(max_n, *max_gens);
                    let agrees = c.agrees();
                    (
                        json!({ "name": "subring", "max_n": max_n, "max_gens": max_gens }),
                        json!({ "agrees": agrees, "comparison": c }),
                    )
                }
                Experiment::Gap => {
                    let max_n = max_n.unwrap_or(8);
                    let rows = gap_search(max_n, &b)?;
                    (json!({ "name": "gap", "max_n": max_n }), json!({ "rows": rows }))
                }
            };
            Ok((input, result, 0))
        }
    }
}

fn classify(file: &str) -> Outcome {
    let input = json!({ "file": file });
    match load(file)? {
        Structure::Table { hint, table } => {
            let kind = table.classify();
            let result = json!({
                "label": kind.kind.as_str(),
                "header": hint,
                "flags": kind,
                "non_associative_triple": table.non_associative_triple(),
            });
            Ok((input, result, 0))
        }
        Structure::Ring(r) => {
            let result = json!({
                "label": "ring",
                "order": r.order(),
                "zero": r.zero(),
                "one": r.one(),
                "additive": r.add_table().classify(),
                "multiplicative": r.mul_table().classify(),
            });
            Ok((input, result, 0))
        }
    }
}

fn rank(
    t: &CayleyTable,
    variant: VariantArg,
    k: Option<usize>,
    max_len: usize,
    tries: u64,
    seed: u64,
    b: &Budget,
) -> Result<(Value, u8), Failure> {
    let core_variant = match variant {
        VariantArg::Lower => {
            if let Some(k) = k {
                let d = rank_decision(t, k, b)?;
                return Ok((json!({ "at_most_k": d.answer(), "decision": d }), decision_code(&d)));
            }
            let report = lower_rank(t, b)?;
            assert!(verify_report(t, &report, b.cube_bits), "witness failed verification");
            let code = if report.exact { 0 } else { 2 };
            return Ok((json!({ "rank": report.rank, "report": report, "verified": true }), code));
        }
        VariantArg::Cube => {
            if let Some(k) = k {
                let d = quasigroup_rank_decision(t, k, tries, seed, b)?;
                return Ok((json!({ "at_most_k": d.answer(), "decision": d }), decision_code(&d)));
            }
            let search = quasigroup_cube_rank(t, max_len, tries, seed, b)?;
            let (rank, code) = match &search {
                RankSearch::Found(r) => {
                    assert!(verify_report(t, r, b.cube_bits), "witness failed verification");
                    (Some(r.rank), if r.exact { 0 } else { 2 })
                }
                RankSearch::NoneUpTo { .. } => (None, 0),
                RankSearch::Exhausted { .. } => (None, 2),
            };
            return Ok((json!({ "rank": rank, "search": search, "verified": rank.is_some() }), code));
        }
        VariantArg::Upper => RankVariant::Upper,
        VariantArg::Intermediate => RankVariant::Intermediate,
        VariantArg::Small => RankVariant::Small,
        VariantArg::Large => RankVariant::Large,
    };
    let outcome = rank_variant(t, core_variant, b)?;
    Ok(match &outcome {
        VariantOutcome::Value { value, .. } => (
            json!({ "rank": value, "at_most_k": k.map(|k| *value <= k), "outcome": outcome }),
            0,
        ),
        VariantOutcome::Exhausted { .. } => (json!({ "rank": null, "outcome": outcome }), 2),
    })
}

#[allow(clippy::too_many_arguments)]
fn member(
    file: &str,
    h: usize,
    gens: &[usize],
    algo: Algo,
    seq: Option<&str>,
    tree: Option<&str>,
    k: Option<usize>,
    d: Option<usize>,
    labels: Labels,
    b: &Budget,
) -> Result<(Value, u8), Failure> {
    let structure = load(file)?;
    let n = match &structure {
        Structure::Table { table, .. } => table.order(),
        Structure::Ring(r) => r.order(),
    };
    let s = ElementSet::from_elements(n, gens.iter().copied())?;
    let t = match structure {
        Structure::Ring(r) => {
            let member = match algo {
                Algo::Closure => subring_membership(&r, h, &s)?,
                Algo::Graph => {
                    let labels = match labels {
                        Labels::Strict => GraphLabels::Strict,
                        Labels::WithUnit => GraphLabels::WithUnit,
                    };
                    subring_membership_graph(&r, h, &s, labels)?
                }
                other => return usage(format!("--algo {} applies to tables, not rings", value_name(&other))),
            };
            return Ok((json!({ "member": member }), 0));
        }
        Structure::Table { table, .. } => table,
    };
    let simple = |m: bool| Ok((json!({ "member": m }), 0));
    match algo {
        Algo::Closure => simple(submagma_membership(&t, h, &s)?),
        Algo::Semigroup => simple(subsemigroup_membership(&t, h, &s, true)?),
        Algo::Subgroup => simple(subgroup_membership(&t, h, &s)?),
        Algo::Graph => usage("--algo graph applies to rings"),
        Algo::Bounded => {
            let (Some(k), Some(d)) = (k, d) else {
                return usage("--algo bounded needs --k and --d");
            };
            let v = bounded_subquasigroup_membership(&t, h, &s, k, d, b.nodes)?;
            if let BoundedVerdict::Member { sequence, tree, .. } = &v {
                let ok = eval_parenthesized(&t, sequence, tree)? == h
                    && sequence.as_slice().iter().all(|x| s.contains(*x))
                    && sequence.len() <= k
                    && tree.depth() <= d;
                assert!(ok, "bounded witness failed verification");
            }
            let code = if v.answer().is_some() { 0 } else { 2 };
            Ok((json!({ "member": v.answer(), "verdict": v }), code))
        }
        Algo::Cube => {
            let Some(seq) = seq else {
                return usage("--algo cube needs --seq");
            };
            let sequence = ElementSequence::new(parse_list(seq, "sequence")?, n)?;
            let p: Parenthesization = match tree {
                Some(text) => text.parse()?,
                None => Parenthesization::balanced(sequence.len()),
            };
            let member = cube_membership(&t, h, &sequence, &p, b.cube_bits)?;
            let witness = if member {
                let values = cube_table(&t, &sequence, &p, b.cube_bits)?;
                let bits = values.iter().position(|&v| v as usize == h).expect("member has an index") as u64;
                let index = CubeIndex::new(bits, sequence.optional_len());
                assert_eq!(cube_eval(&t, &sequence, &p, index)?, h, "cube witness failed verification");
                let kept: Vec<bool> = (1..sequence.len()).map(|pos| index.keeps(pos)).collect();
                Some(kept)
            } else {
                None
            };
            Ok((
                json!({ "member": member, "tree": p, "cube_index": witness }),
                0,
            ))
        }
        Algo::ViaRank => {
            let v = membership_via_rank(&t, h, &s, b)?;
            let code = if v.verdict.is_some() { 0 } else { 2 };
            Ok((json!({ "member": v.verdict, "ranks": v }), code))
        }
    }
}

fn generate(family: &str, params: &[usize], seed: u64, shuffle: Option<u64>, out: Option<&str>) -> Outcome {
    let fam: Family = family.parse()?;
    let generated = CorpusSpec::new(fam, params.to_vec(), seed).generate()?;
    let args: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    let mut comments = vec![format!("{fam} {} seed {seed}", args.join(" ")).replace("  ", " ")];
    let (text, order, label) = match generated {
        Generated::Table(t) => {
            let t = match shuffle {
                Some(s) => {
                    comments.push(format!("shuffled with seed {s}"));
                    corpus::shuffled(&t, s)
                }
                None => t,
            };
            (format::write_table(&t, &comments), t.order(), t.classify().kind.as_str())
        }
        Generated::Ring(r) => {
            if shuffle.is_some() {
                return usage("--shuffle applies to tables, not rings");
            }
            (format::write_ring(&r, &comments), r.order(), "ring")
        }
    };
    let input = json!({ "family": fam, "params": params, "seed": seed, "shuffle": shuffle, "out": out });
    let mut result = json!({ "order": order, "label": label });
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Io {
                path: path.to_string(),
                message: e.to_string(),
            })?;
            result["path"] = json!(path);
        }
        None => result["text"] = json!(text),
    }
    Ok((input, result, 0))
}
