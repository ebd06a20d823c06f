//! The `tconic` command line.

pub mod args;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::error::ErrorKind;
use clap::Parser;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use tconic::classify::scan_multi_singular;
use tconic::discrepancy::component_fraction;
use tconic::tchain::endpoint_alphas;
use tconic::{
    analyze, blow_up_edge, blow_up_vertex, canonical_form, certify, check_parabolic_line,
    classify_form, classify_index2, conjugate, construction_step, contract_black, enumerate_fibers,
    enumerate_tchains, family_instance, family_match, hj_eval, hj_expand, index,
    intersection_matrix, invariants, is_t_chain, is_t_fraction, kernel_vector, parse_graph,
    realize_tchain, solve_codiscrepancy, t_step_a, t_step_b, white_components, Chain, Error,
    FamilyTag, Fraction, SearchBounds, VertexId, WeightedGraph, WhiteComponent,
};

use args::{ClassifyCmd, Cli, Command, GraphCmd, HjCmd, LcbCmd, StepArg, TchainCmd};

/// Every subcommand and the library operation it runs.
pub const COMMANDS: &[(&str, &str)] = &[
    ("hj expand", "hj_expand"),
    ("hj eval", "hj_eval"),
    ("hj conjugate", "conjugate"),
    ("hj invariants", "invariants"),
    ("hj is-t", "is_t_fraction"),
    ("hj action", "Fraction::from_action"),
    ("tchain check", "is_t_chain"),
    ("tchain enum", "enumerate_tchains"),
    ("tchain step", "t_step_a / t_step_b"),
    ("tchain certify", "certify"),
    ("tchain alphas", "endpoint_alphas"),
    ("graph classify", "classify_form"),
    ("graph kernel", "kernel_vector"),
    ("graph discrepancies", "solve_codiscrepancy"),
    ("graph blowup-vertex", "blow_up_vertex"),
    ("graph blowup-edge", "blow_up_edge"),
    ("graph contract", "contract_black"),
    ("graph canonical", "canonical_form"),
    ("graph components", "white_components"),
    ("graph matrix", "intersection_matrix"),
    ("lcb verify", "analyze"),
    ("lcb family", "family_match"),
    ("lcb index", "index"),
    ("lcb construct", "construction_step"),
    ("lcb instance", "family_instance"),
    ("lcb parabolic-line", "check_parabolic_line"),
    ("classify run", "enumerate_fibers"),
    ("classify index2", "classify_index2"),
    ("classify multi", "scan_multi_singular"),
    ("classify realize", "realize_tchain"),
];

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

struct Output {
    text: String,
    json: Value,
    verdict: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            verdict: true,
        }
    }

    fn verdict(mut self, v: bool) -> Self {
        self.verdict = v;
        self
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ClassificationGap(_) | Error::NotFound(_) | Error::PostVerificationFailed(_) => {
                EXIT_FALSE
            }
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Res = Result<Output, Failure>;

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if help { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if help { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            if cli.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&o.json).unwrap());
            } else {
                let _ = writeln!(out, "{}", o.text.trim_end());
            }
            if o.verdict {
                EXIT_OK
            } else {
                EXIT_FALSE
            }
        }
        Err(f) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": f.message }));
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Sets the size of the search pool from `TCONIC_WORKERS`.
pub fn configure_workers() -> Result<(), String> {
    let Ok(v) = std::env::var("TCONIC_WORKERS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| format!("TCONIC_WORKERS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("TCONIC_WORKERS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(c: &Command) -> Res {
    match c {
        Command::Hj(c) => hj(c),
        Command::Tchain(c) => tchain(c),
        Command::Graph(c) => graph(c),
        Command::Lcb(c) => lcb(c),
        Command::Classify(c) => classify(c),
    }
}

fn frac(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn fraction(s: &str) -> Result<Fraction, Failure> {
    Ok(s.parse::<Fraction>()?)
}

fn chain(s: &str) -> Result<Chain, Failure> {
    Ok(s.parse::<Chain>()?)
}

fn input(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

fn load(arg: &str) -> Result<WeightedGraph, Failure> {
    let t = arg.trim_start();
    if t.starts_with("chain:") || t.starts_with("fork:") || t.starts_with('{') {
        return Ok(parse_graph(arg)?);
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| input(format!("cannot read {arg}: {e}")))?
    };
    parse_graph(&text).map_err(|e| input(format!("{arg}: {e}")))
}

fn graph_out(g: &WeightedGraph, fresh: Option<VertexId>) -> Output {
    let mut text = g.to_text();
    if let Some(v) = fresh {
        text.push_str(&format!("# new vertex {v}\n"));
    }
    Output::new(
        text,
        json!({ "graph": g.to_json(), "newVertex": fresh.map(|v| v.0) }),
    )
}

fn hj(c: &HjCmd) -> Res {
    Ok(match c {
        HjCmd::Expand { fraction: f } => {
            let f = fraction(f)?;
            let c = hj_expand(&f);
            Output::new(c.to_string(), json!({ "fraction": f, "chain": c }))
        }
        HjCmd::Eval { chain: c } => {
            let c = chain(c)?;
            let f = hj_eval(&c);
            Output::new(f.to_string(), json!({ "chain": c, "fraction": f }))
        }
        HjCmd::Conjugate { fraction: f } => {
            let f = fraction(f)?;
            let g = conjugate(&f);
            Output::new(g.to_string(), json!({ "fraction": f, "conjugate": g }))
        }
        HjCmd::Invariants { fraction: f } => {
            let f = fraction(f)?;
            let i = invariants(&f);
            Output::new(
                format!(
                    "iota = {}, beta = {}, gamma = {}",
                    i.iota,
                    frac(&i.beta),
                    i.gamma
                ),
                json!({
                    "fraction": f,
                    "iota": i.iota.to_string(),
                    "beta": frac(&i.beta),
                    "gamma": i.gamma.to_string(),
                }),
            )
        }
        HjCmd::IsT { fraction: f } => {
            let f = fraction(f)?;
            let t = is_t_fraction(&f);
            let text = if t {
                format!("1/{}(1,{}) is a T-singularity", f.n(), f.q())
            } else {
                format!(
                    "1/{}(1,{}) is not a T-singularity: {}",
                    f.n(),
                    f.q(),
                    t_reason(&f)
                )
            };
            Output::new(text, json!({ "fraction": f, "t": t })).verdict(t)
        }
        HjCmd::Action { n, a, b } => {
            let p = |s: &str| {
                s.parse::<BigUint>()
                    .map_err(|_| input(format!("{s:?} is not a non-negative integer")))
            };
            let f = Fraction::from_action(p(n)?, p(a)?, p(b)?)?;
            Output::new(f.to_string(), json!({ "fraction": f }))
        }
    })
}

fn t_reason(f: &Fraction) -> String {
    if f.is_du_val() {
        format!("Du Val of type A{}", f.n() - 1u32)
    } else {
        let q1 = f.q() + 1u32;
        format!("(q+1)^2 = {} ≢ 0 mod {}", &q1 * &q1, f.n())
    }
}

fn tchain(c: &TchainCmd) -> Res {
    Ok(match c {
        TchainCmd::Check { chain: c } => {
            let c = chain(c)?;
            let t = is_t_chain(&c);
            let f = hj_eval(&c);
            let text = if t {
                format!("T-chain: [{c}] = {f}")
            } else {
                format!("not a T-chain: {}", t_reason(&f))
            };
            Output::new(text, json!({ "chain": c, "fraction": f, "tChain": t })).verdict(t)
        }
        TchainCmd::Enum { max_len } => {
            if *max_len == 0 {
                return Err(input("--max-len must be positive".into()));
            }
            let all = enumerate_tchains(*max_len);
            let text: Vec<String> = all.iter().map(Chain::to_string).collect();
            Output::new(text.join("\n"), json!(all))
        }
        TchainCmd::Step { step, chain: c } => {
            let c = chain(c)?;
            let next = match step {
                StepArg::A => t_step_a(&c),
                StepArg::B => t_step_b(&c),
            };
            Output::new(next.to_string(), json!({ "chain": c, "result": next }))
        }
        TchainCmd::Certify { chain: c } => {
            let cert = certify(&chain(c)?)?;
            Output::new(
                format!("seed {}, steps {}", cert.seed, cert.word()),
                json!({ "chain": cert.chain, "seed": cert.seed.to_string(), "steps": cert.word() }),
            )
        }
        TchainCmd::Alphas { chain: c } => {
            let c = chain(c)?;
            let (a, b) = endpoint_alphas(&c);
            Output::new(
                format!("{} {}", frac(&a), frac(&b)),
                json!({ "chain": c, "first": frac(&a), "last": frac(&b) }),
            )
        }
    })
}

fn graph(c: &GraphCmd) -> Res {
    Ok(match c {
        GraphCmd::Classify(a) => {
            let f = classify_form(&load(&a.graph)?);
            Output::new(
                format!(
                    "{:?} (negative {}, zero {}, positive {})",
                    f.tag, f.negatives, f.zeros, f.positives
                ),
                json!(f),
            )
        }
        GraphCmd::Kernel(a) => {
            let k = kernel_vector(&load(&a.graph)?)?;
            let text: Vec<String> = k.entries.iter().map(|(v, x)| format!("{v}: {x}")).collect();
            let j: serde_json::Map<String, Value> = k
                .entries
                .iter()
                .map(|(v, x)| (v.to_string(), Value::from(x.to_string())))
                .collect();
            Output::new(text.join("\n"), Value::Object(j))
        }
        GraphCmd::Discrepancies(a) => {
            let d = solve_codiscrepancy(&load(&a.graph)?)?;
            let text: Vec<String> = d
                .entries
                .iter()
                .map(|(v, x)| {
                    format!(
                        "{v}: d = {}, alpha = {}",
                        frac(x),
                        frac(&d.log_discrepancy(*v).unwrap())
                    )
                })
                .collect();
            let j: serde_json::Map<String, Value> = d
                .entries
                .iter()
                .map(|(v, x)| (v.to_string(), Value::from(frac(x))))
                .collect();
            Output::new(text.join("\n"), json!({ "codiscrepancies": j }))
        }
        GraphCmd::BlowupVertex { id, g } => {
            let (h, v) = blow_up_vertex(&load(&g.graph)?, VertexId(*id))?;
            graph_out(&h, Some(v))
        }
        GraphCmd::BlowupEdge { a, b, g } => {
            let (h, v) = blow_up_edge(&load(&g.graph)?, VertexId(*a), VertexId(*b))?;
            graph_out(&h, Some(v))
        }
        GraphCmd::Contract { id, g } => {
            graph_out(&contract_black(&load(&g.graph)?, VertexId(*id))?, None)
        }
        GraphCmd::Canonical(a) => {
            let c = canonical_form(&load(&a.graph)?)?;
            Output::new(c.to_string(), json!({ "canonical": c }))
        }
        GraphCmd::Components(a) => {
            let comps = white_components(&load(&a.graph)?);
            let mut text = Vec::new();
            let mut j = Vec::new();
            for c in &comps {
                let ids: Vec<u32> = c.vertices().iter().map(|v| v.0).collect();
                match c {
                    WhiteComponent::Chain { chain, .. } => {
                        let f = component_fraction(chain);
                        text.push(format!("chain [{chain}] = {f} on {ids:?}"));
                        j.push(json!({ "vertices": ids, "chain": chain, "fraction": f }));
                    }
                    WhiteComponent::NonChain { .. } => {
                        text.push(format!("not a chain on {ids:?}"));
                        j.push(json!({ "vertices": ids, "chain": null }));
                    }
                }
            }
            Output::new(text.join("\n"), json!(j))
        }
        GraphCmd::Matrix(a) => {
            let m = intersection_matrix(&load(&a.graph)?);
            let text: Vec<String> = m
                .iter()
                .map(|r| r.iter().map(|x| format!("{x:>3}")).collect::<String>())
                .collect();
            Output::new(text.join("\n"), json!(m))
        }
    })
}

fn verify_text(a: &tconic::FiberAnalysis) -> String {
    let mut s = String::new();
    let f = &a.form;
    s.push_str(&format!(
        "form: {:?} (negative {}, zero {}, positive {})\n",
        f.tag, f.negatives, f.zeros, f.positives
    ));
    if let Some(m) = &a.multiplicities {
        let v: Vec<String> = m.entries.values().map(|x| x.to_string()).collect();
        s.push_str(&format!("multiplicities: {}\n", v.join(",")));
    }
    for c in a.singular_chains() {
        s.push_str(&format!("singular point: [{c}] = {}\n", hj_eval(c)));
    }
    for (v, x) in &a.delta_dot_l {
        s.push_str(&format!("delta.L[{v}] = {}\n", frac(x)));
    }
    if let Some(l) = &a.sum_l {
        s.push_str(&format!("sum l = {l}\n"));
    }
    let checks = serde_json::to_value(a.checks).unwrap();
    for (k, v) in checks.as_object().unwrap() {
        s.push_str(&format!(
            "{k}: {}\n",
            if v == true { "pass" } else { "fail" }
        ));
    }
    if let Some(i) = &a.index {
        s.push_str(&format!("index: {i}\n"));
    }
    if let Ok(f) = family_match(a) {
        s.push_str(&format!("family: {f}\n"));
    }
    s.push_str(&format!(
        "T-conic bundle fiber: {}\n",
        if a.t_conic_bundle { "yes" } else { "no" }
    ));
    s
}

fn family_tag(s: &str) -> Result<FamilyTag, Failure> {
    FamilyTag::NAMED
        .into_iter()
        .find(|t| t.to_string() == s)
        .ok_or_else(|| {
            input(format!(
                "unknown family {s:?}; expected one of I*, I**, I***, II*, III*, III**"
            ))
        })
}

fn lcb(c: &LcbCmd) -> Res {
    Ok(match c {
        LcbCmd::Verify(g) => {
            let a = analyze(&load(&g.graph)?);
            Output::new(verify_text(&a), a.to_json()).verdict(a.t_conic_bundle)
        }
        LcbCmd::Family(g) => {
            let a = analyze(&load(&g.graph)?);
            match family_match(&a) {
                Ok(f) => {
                    let named = f.tag != FamilyTag::Unclassified;
                    Output::new(f.to_string(), f.to_json()).verdict(named)
                }
                Err(Error::NotApplicable(m)) => {
                    Output::new(format!("no family: {m}"), json!({ "tag": null })).verdict(false)
                }
                Err(e) => return Err(e.into()),
            }
        }
        LcbCmd::Index(g) => {
            let i = index(&analyze(&load(&g.graph)?))?;
            Output::new(i.to_string(), json!({ "index": i.to_string() }))
        }
        LcbCmd::Construct { black, end, g } => {
            let a = analyze(&load(&g.graph)?);
            let next = construction_step(&a, VertexId(*black), VertexId(*end))?;
            Output::new(
                format!("{}{}", next.graph.to_text(), verify_text(&next)),
                next.to_json(),
            )
        }
        LcbCmd::Instance { family, box_chain } => {
            let tag = family_tag(family)?;
            let b = box_chain.as_deref().map(chain).transpose()?;
            graph_out(&family_instance(tag, b.as_ref())?, None)
        }
        LcbCmd::ParabolicLine { left, right } => {
            let (p, cond) = check_parabolic_line(&chain(left)?, &chain(right)?);
            let text = match cond {
                None => "not parabolic".to_string(),
                Some(true) => "parabolic; side sums equal rho - 2".to_string(),
                Some(false) => "parabolic; side sums differ from rho - 2".to_string(),
            };
            Output::new(text, json!({ "parabolic": p, "condition": cond }))
                .verdict(cond != Some(false))
        }
    })
}

fn classify(c: &ClassifyCmd) -> Res {
    Ok(match c {
        ClassifyCmd::Run {
            max_vertices,
            max_weight,
            index,
            irreducible,
            non_du_val,
            budget,
        } => {
            let mut b = SearchBounds::new(*max_vertices, *max_weight)?;
            if let Some(i) = index {
                b = b.index(*i);
            }
            if *irreducible {
                b = b.irreducible();
            }
            if *non_du_val {
                b = b.non_du_val();
            }
            if let Some(x) = budget {
                b = b.budget(*x);
            }
            let records = enumerate_fibers(&b)?;
            let text: Vec<String> = records
                .iter()
                .map(|r| {
                    let pts: Vec<String> = r
                        .analysis
                        .singular_chains()
                        .iter()
                        .map(|c| format!("[{c}]"))
                        .collect();
                    format!("{}  {}  {}", r.canonical, r.family, pts.join(" "))
                        .trim_end()
                        .to_string()
                })
                .collect();
            let mut text = text.join("\n");
            text.push_str(&format!("\n{} fiber(s)", records.len()));
            Output::new(
                text,
                json!({
                    "bounds": b.to_json(),
                    "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                }),
            )
        }
        ClassifyCmd::Index2 { max_vertices } => {
            let r = classify_index2(*max_vertices)?;
            let mut text: Vec<String> = r
                .hits
                .iter()
                .map(|h| format!("{}  {}", h.canonical, h.family))
                .collect();
            for (k, v) in &r.counts {
                text.push(format!("{k}: {v}"));
            }
            text.push(format!("Du Val only: {}", r.du_val_only.len()));
            Output::new(text.join("\n"), r.to_json())
        }
        ClassifyCmd::Multi {
            max_vertices,
            max_weight,
        } => {
            let r = scan_multi_singular(*max_vertices, *max_weight)?;
            let mut text: Vec<String> = r
                .by_count
                .iter()
                .map(|(k, v)| format!("{k} non-Du Val point(s): {}", v.len()))
                .collect();
            for (i, e) in r.examples.iter().enumerate() {
                text.push(format!(
                    "example {}: {} vertices, valid {}, {} non-Du Val point(s), found {}",
                    i + 1,
                    e.vertices,
                    e.valid,
                    e.non_du_val_count,
                    e.found_in_scan
                        .map_or("n/a (outside bounds)".to_string(), |f| f.to_string())
                ));
            }
            Output::new(text.join("\n"), r.to_json())
        }
        ClassifyCmd::Realize {
            chain: c,
            max_steps,
        } => {
            let r = realize_tchain(&chain(c)?, *max_steps)?;
            let mut text = format!(
                "seed {}, steps {}\n",
                r.certificate.seed,
                r.certificate.word()
            );
            text.push_str(&r.result().graph.to_text());
            Output::new(text, r.to_json())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use std::collections::BTreeSet;

    fn leaves(c: &clap::Command, prefix: &str, out: &mut Vec<String>) {
        let subs: Vec<_> = c
            .get_subcommands()
            .filter(|s| s.get_name() != "help")
            .collect();
        if subs.is_empty() {
            out.push(prefix.trim().to_string());
        }
        for s in subs {
            leaves(s, &format!("{prefix} {}", s.get_name()), out);
        }
    }

    #[test]
    fn command_table_covers_every_subcommand_once() {
        let mut found = Vec::new();
        leaves(&Cli::command(), "", &mut found);
        let table: Vec<String> = COMMANDS.iter().map(|(p, _)| p.to_string()).collect();
        let a: BTreeSet<_> = found.iter().collect();
        let b: BTreeSet<_> = table.iter().collect();
        assert_eq!(a, b);
        assert_eq!(table.len(), b.len(), "duplicate paths");
    }

    #[test]
    fn every_library_operation_is_reachable_once() {
        let ops: Vec<&str> = COMMANDS.iter().map(|(_, op)| *op).collect();
        let unique: BTreeSet<&str> = ops.iter().copied().collect();
        assert_eq!(ops.len(), unique.len());
        let library = [
            "hj_expand",
            "hj_eval",
            "conjugate",
            "invariants",
            "is_t_fraction",
            "Fraction::from_action",
            "is_t_chain",
            "enumerate_tchains",
            "t_step_a / t_step_b",
            "certify",
            "endpoint_alphas",
            "classify_form",
            "kernel_vector",
            "solve_codiscrepancy",
            "blow_up_vertex",
            "blow_up_edge",
            "contract_black",
            "canonical_form",
            "white_components",
            "intersection_matrix",
            "analyze",
            "family_match",
            "index",
            "construction_step",
            "family_instance",
            "check_parabolic_line",
            "enumerate_fibers",
            "classify_index2",
            "scan_multi_singular",
            "realize_tchain",
        ];
        assert_eq!(unique, library.into_iter().collect());
    }

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("tconic").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn spec_examples() {
        assert_eq!(
            run_str(&["hj", "expand", "9/5"]),
            (0, "2,5\n".into(), String::new())
        );
        let (code, out, _) = run_str(&["tchain", "check", "2,5,2"]);
        assert_eq!(code, 1);
        assert_eq!(out.trim(), "not a T-chain: (q+1)^2 = 100 ≢ 0 mod 16");
        let (code, out, _) = run_str(&["lcb", "verify", "chain:4,1,2,2,2", "--json"]);
        assert_eq!(code, 0);
        let j: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(j["family"], "III*");
        assert_eq!(j["index"], 2);
        assert_eq!(j["multiplicities"], json!([1, 4, 3, 2, 1]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["hj", "expand", "6/4"]).0, 2);
        assert_eq!(run_str(&["hj", "eval", "2,1"]).0, 2);
        assert_eq!(run_str(&["hj", "frobnicate"]).0, 2);
        assert_eq!(run_str(&["lcb", "verify", "chain:3,1,3"]).0, 1);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
