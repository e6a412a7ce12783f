//! One PASS/FAIL line per acceptance criterion.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use fibcat::arbreal::{self, ArbReal};
use fibcat::engine::{self, Digits, EngineError, Status, VerificationReport, VerificationResult, VerifyConfig};
use fibcat::expr::NumericEvaluator;
use fibcat::seriesdsl::{builtin_registry, parse_expression, IdentityRecord, Kind, Lhs, TailStrategy};

struct Outcome {
    pass: bool,
    detail: String,
    /// Failing items that are documented discrepancies in the source itself.
    known: Vec<String>,
}

impl Outcome {
    fn new(problems: Vec<String>, known: Vec<String>, summary: String) -> Self {
        let pass = problems.is_empty() && known.is_empty();
        let mut detail = summary;
        for p in problems.iter().chain(&known) {
            detail.push_str("\n      ");
            detail.push_str(p);
        }
        Outcome { pass, detail, known: if problems.is_empty() { known } else { Vec::new() } }
    }
}

fn is_geometric(r: &IdentityRecord) -> bool {
    matches!(r.tail, Some(TailStrategy::Geometric { .. }))
}

fn describe(r: &VerificationResult) -> String {
    let diff = r.abs_diff.as_ref().map(|d| d.to_sci_string(3)).unwrap_or_else(|| "-".into());
    let msg = r.message.as_deref().unwrap_or("");
    format!("{} [{}] {:?} diff={diff} {msg}", r.id, r.binding.label(), r.status)
}

fn run(records: &[IdentityRecord]) -> (VerificationReport, Duration) {
    let t = Instant::now();
    let rep = engine::verify_all(records, &VerifyConfig::default());
    (rep, t.elapsed())
}

fn select(all: &[IdentityRecord], f: impl Fn(&IdentityRecord) -> bool) -> Vec<IdentityRecord> {
    all.iter().filter(|r| f(r)).cloned().collect()
}

fn geometric_suite(all: &[IdentityRecord]) -> Outcome {
    let recs = select(all, |r| !r.as_printed && is_geometric(r));
    let (rep, took) = run(&recs);
    let mut problems: Vec<String> = rep
        .results
        .iter()
        .filter(|r| r.status != Status::Pass || !r.abs_diff.as_ref().is_some_and(|d| d.below_pow10(50)))
        .map(describe)
        .collect();
    if took > Duration::from_secs(300) {
        problems.push(format!("took {took:?}"));
    }
    Outcome::new(problems, vec![], format!("{} records, {} results at 50 digits in {took:.2?}", recs.len(), rep.results.len()))
}

const ALGEBRAIC_VALUES: [&str; 10] = [
    "s2.Gt.pi2",
    "s4.Wt.pi2",
    "s7.thm10.r0",
    "s7.thm11.r1",
    "s7.thm12.r0",
    "s7.thm12.rm1.printed",
    "s7.thm13.r0",
    "s7.thm13.r1",
    "s7.thm14.rm1",
    "s7.thm14.r0",
];

fn algebraic_suite(all: &[IdentityRecord]) -> Outcome {
    let recs = select(all, |r| ALGEBRAIC_VALUES.contains(&r.id.as_str()));
    assert_eq!(recs.len(), ALGEBRAIC_VALUES.len());
    let (rep, _) = run(&recs);
    let mut problems = Vec::new();
    let mut known = Vec::new();
    let mut lines = Vec::new();
    for r in &rep.results {
        let digits = match r.digits_achieved {
            Some(Digits::Value(d)) => d,
            _ => 0,
        };
        lines.push(format!("{}:{}", r.id, digits));
        if r.status == Status::Pass && digits >= 10 && r.terms_used <= 100_000 {
            continue;
        }
        if r.id == "s7.thm12.rm1.printed" {
            known.push(format!("{} (printed value; the series equals 8x it, factor 2^(1-2r) at r=-1)", describe(r)));
        } else {
            problems.push(describe(r));
        }
    }
    let corrected = select(all, |r| r.id == "s7.thm12.rm1");
    let (c, _) = run(&corrected);
    lines.push(format!("s7.thm12.rm1 (corrected) {:?}", c.results[0].status));
    if c.results[0].status != Status::Pass {
        problems.push(describe(&c.results[0]));
    }
    Outcome::new(problems, known, lines.join(" "))
}

fn finite_suite(all: &[IdentityRecord]) -> Outcome {
    let recs = select(all, |r| r.kind == Kind::Finite);
    let (rep, took) = run(&recs);
    let mut problems: Vec<String> = rep.results.iter().filter(|r| r.status != Status::Pass).map(describe).collect();
    for r in &recs {
        let max_n = r.bindings().iter().filter_map(|e| e.get("n")).max().unwrap_or(0);
        if max_n < 300 {
            problems.push(format!("{} only reaches n={max_n}", r.id));
        }
    }
    if recs.len() < 4 {
        problems.push(format!("only {} finite records", recs.len()));
    }
    if took > Duration::from_secs(10) {
        problems.push(format!("took {took:?}"));
    }
    Outcome::new(problems, vec![], format!("{} records, {} exact checks in {took:.2?}", recs.len(), rep.results.len()))
}

fn exact_field_suite(all: &[IdentityRecord]) -> Outcome {
    let recs = select(all, |r| !r.as_printed && matches!(r.kind, Kind::Algebraic | Kind::Radical));
    let (rep, _) = run(&recs);
    let mut problems: Vec<String> = rep.results.iter().filter(|r| r.status != Status::Pass).map(describe).collect();
    for r in &recs {
        for p in &r.params {
            if p.lo > -50 || p.hi < 50 {
                problems.push(format!("{} covers {}={}..{} only", r.id, p.name, p.lo, p.hi));
            }
        }
    }
    for id in ["s2.lem3.alpha", "s2.lem4.plus", "s4.lem5.plus", "s6.lem6.plus", "s1.binet.F"] {
        if !recs.iter().any(|r| r.id == id) {
            problems.push(format!("missing {id}"));
        }
    }
    Outcome::new(problems, vec![], format!("{} records, {} exact checks", recs.len(), rep.results.len()))
}

fn integral_suite(all: &[IdentityRecord]) -> Outcome {
    let groups: [(&[&str], u32, i64); 3] = [
        (&["s1.Cn.int4", "s1.Cn.int2", "s1.invCn.int"], 30, 20),
        (&["s7.lewin.pi6", "s7.lewin.pi4", "s7.lewin.pi2"], 20, 0),
        (&["s7.sinpow.odd", "s7.sinpow.even"], 30, 20),
    ];
    let mut problems = Vec::new();
    let mut total = 0;
    for (ids, digits, max_n) in groups {
        let recs = select(all, |r| ids.contains(&r.id.as_str()));
        if recs.len() != ids.len() {
            problems.push(format!("missing one of {ids:?}"));
        }
        for r in &recs {
            let top = r.bindings().iter().filter_map(|e| e.get("n")).max().unwrap_or(0);
            if top < max_n {
                problems.push(format!("{} only reaches n={top}", r.id));
            }
        }
        let (rep, _) = run(&recs);
        total += rep.results.len();
        for r in &rep.results {
            let ok = r.status == Status::Pass
                && r.digits_requested.unwrap_or(0) >= digits
                && r.abs_diff.as_ref().is_some_and(|d| d.below_pow10(digits as i64));
            if !ok {
                problems.push(describe(r));
            }
        }
    }
    Outcome::new(problems, vec![], format!("{total} quadrature checks"))
}

fn constant_cross_checks() -> Outcome {
    let pairs: [(&str, fn(u32) -> ArbReal, fn(u32) -> ArbReal); 4] = [
        ("pi", arbreal::pi, arbreal::pi_agm),
        ("G", arbreal::catalan_g, arbreal::catalan_g_clausen),
        ("zeta3", arbreal::zeta3, arbreal::zeta3_euler_maclaurin),
        ("ln alpha", arbreal::ln_alpha, arbreal::ln_alpha_asinh),
    ];
    let mut problems = Vec::new();
    let mut lines = Vec::new();
    for (name, a, b) in pairs {
        let d = (&a(50) - &b(50)).abs();
        lines.push(format!("{name}:{}", d.to_sci_string(2)));
        if !d.below_pow10(50) {
            problems.push(format!("{name}: routes differ by {}", d.to_sci_string(3)));
        }
    }
    Outcome::new(problems, vec![], lines.join(" "))
}

fn misprint_ledger(all: &[IdentityRecord]) -> Outcome {
    let printed = select(all, |r| r.as_printed && r.id.starts_with("s2."));
    let (rep, _) = run(&printed);
    let text = rep.to_text();
    let one = ArbReal::one(30);
    let mut problems = Vec::new();
    for r in &rep.results {
        if r.status != Status::Fail {
            problems.push(format!("{} did not fail", describe(r)));
        }
        if !text.contains(&r.id) {
            problems.push(format!("{} missing from report", r.id));
        }
        if r.id.starts_with("s2.G2t.") {
            let off = r.abs_diff.as_ref().map(|d| (d - &one).abs());
            if !off.is_some_and(|o| o.below_pow10(10)) {
                problems.push(format!("{} abs_diff is not 1", describe(r)));
            }
        }
        let partner = r.id.trim_end_matches(".printed");
        let twin = select(all, |x| x.id == partner);
        match run(&twin).0.results.first() {
            Some(t) if t.status == Status::Pass => {}
            Some(t) => problems.push(format!("corrected {} fails", describe(t))),
            None => problems.push(format!("{} has no corrected partner", r.id)),
        }
    }
    if !printed.iter().any(|r| r.id == "s2.CnF.ex0.printed") || printed.iter().filter(|r| r.id.starts_with("s2.G2t.")).count() < 3
    {
        problems.push("expected as-printed records are missing".into());
    }
    Outcome::new(problems, vec![], format!("{} as-printed records fail, corrected partners pass", rep.results.len()))
}

fn perturb(r: &IdentityRecord) -> IdentityRecord {
    let mut p = r.clone();
    let text = if r.kind == Kind::Radical {
        format!("({})*(1 + 1/10^6)", r.rhs)
    } else {
        format!("({}) + 1/10^6", r.rhs)
    };
    p.rhs = parse_expression(&text).expect("perturbed rhs parses");
    p
}

fn observed_ratio(r: &IdentityRecord) -> Option<f64> {
    let Lhs::Series(spec) = &r.lhs else { return None };
    let env = r.bindings().into_iter().next()?;
    let mut ev = NumericEvaluator::new(30);
    let n = spec.start + 200;
    let a = ev.eval(&spec.term, &env.clone().with(&spec.index, n)).ok()?;
    let b = ev.eval(&spec.term, &env.with(&spec.index, n + 1)).ok()?;
    let q = b.abs().checked_div(&a.abs()).ok()?.to_f64();
    q.is_finite().then_some(q)
}

fn negative_controls(all: &[IdentityRecord]) -> Outcome {
    let regular = select(all, |r| !r.as_printed);
    let perturbed: Vec<IdentityRecord> = regular.iter().map(perturb).collect();
    let (rep, _) = run(&perturbed);
    let mut problems: Vec<String> =
        rep.results.iter().filter(|r| r.status != Status::Fail).map(|r| format!("perturbed {}", describe(r))).collect();

    let mut violations = 0;
    for r in regular.iter().filter(|r| is_geometric(r)) {
        let Some(q) = observed_ratio(r) else {
            problems.push(format!("{}: no observable ratio near n=200", r.id));
            continue;
        };
        let Some(TailStrategy::Geometric { from, .. }) = &r.tail else { unreachable!() };
        let scaled = (0.9 * q * 1e6).floor() as i64;
        let rho = BigRational::new(BigInt::from(scaled.max(1)), BigInt::from(1_000_000));
        let tail = TailStrategy::Geometric { ratio: rho, from: *from };
        let Lhs::Series(spec) = &r.lhs else { unreachable!() };
        let env = r.bindings().into_iter().next().unwrap();
        match engine::sum_series(spec, &env, &tail, 50) {
            Err(EngineError::TailBoundViolation { .. }) => violations += 1,
            other => problems.push(format!("{} with rho={:.6}: {:?}", r.id, 0.9 * q, other.map(|s| s.value.to_sci_string(12)))),
        }
    }
    Outcome::new(
        problems,
        vec![],
        format!("{} perturbed results fail, {violations} understated ratios rejected", rep.results.len()),
    )
}

fn main() {
    let all = builtin_registry();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("geometric-class series at 50 digits", Box::new(|| geometric_suite(&all))),
        ("algebraic-decay values to 10 digits", Box::new(|| algebraic_suite(&all))),
        ("finite identities exact for n <= 300", Box::new(|| finite_suite(&all))),
        ("Q(sqrt5) identities exact over [-50, 50]", Box::new(|| exact_field_suite(&all))),
        ("integral representations by tanh-sinh", Box::new(|| integral_suite(&all))),
        ("constants agree across two routes", Box::new(constant_cross_checks)),
        ("as-printed variants fail as documented", Box::new(|| misprint_ledger(&all))),
        ("negative controls", Box::new(|| negative_controls(&all))),
    ];
    let mut unexpected = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = check();
        let tag = if o.pass {
            "PASS"
        } else if o.known.is_empty() {
            unexpected += 1;
            "FAIL"
        } else {
            "FAIL (known discrepancy)"
        };
        println!("criterion {} {tag}: {name} [{:.1?}]\n      {}", i + 1, t.elapsed(), o.detail);
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
