//! The built-in acceptance suite.
//!
//! Every check is independent, so they run on scoped threads and the report
//! is assembled in check order afterwards.

use std::sync::Arc;
use std::thread;

use grasper_core::ring::Sign;
use grasper_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Record, Report, Status};

pub const DEFAULT_SEED: u64 = 0x0067_7261_7370_6572;

/// Class of `tᵏ` for `k = -12..=12` in the 4-sphere quotient, as
/// `(k, Some((j, c)))` meaning `c·tʲ`, or `None` for zero. Produced by the
/// lattice row-reduction oracle in the acceptance tests.
pub const S4_CLASS_TABLE: [(i64, Option<(i64, i64)>); 25] = [
    (-12, Some((11, -1))),
    (-11, Some((10, -1))),
    (-10, Some((9, -1))),
    (-9, Some((8, -1))),
    (-8, Some((7, -1))),
    (-7, Some((6, -1))),
    (-6, Some((5, -1))),
    (-5, Some((4, -1))),
    (-4, Some((3, -1))),
    (-3, Some((2, -1))),
    (-2, Some((1, -1))),
    (-1, None),
    (0, None),
    (1, Some((1, 1))),
    (2, Some((2, 1))),
    (3, Some((3, 1))),
    (4, Some((4, 1))),
    (5, Some((5, 1))),
    (6, Some((6, 1))),
    (7, Some((7, 1))),
    (8, Some((8, 1))),
    (9, Some((9, 1))),
    (10, Some((10, 1))),
    (11, Some((11, 1))),
    (12, Some((12, 1))),
];

/// Image of `tⁱ`, `i = 1..=12`, in the Smith normal form of the
/// barbell-symmetry lattice (invariant factors `1, …, 1, 2`).
pub const S4_SCALAR_TABLE: [u8; 12] = [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0];

pub type Reducer<'a> = dyn Fn(&RingElement) -> Result<GrasperClass> + Sync + 'a;

type Outcome = Result<(bool, String, String, String)>;

fn record(name: &str, outcome: Outcome) -> Record {
    match outcome {
        Ok((ok, lhs, rhs, details)) => {
            let status = if ok { Status::Pass } else { Status::Fail };
            Record::new(name, status).sides(lhs, rhs).details(details)
        }
        Err(e) => Record::error(name, &e),
    }
}

fn zg() -> ReductionContext {
    ReductionContext::surgered(vec![FactorSpec::IntegerCyclic("g".into())]).expect("valid")
}

fn f2() -> ReductionContext {
    ReductionContext::surgered(vec![FactorSpec::FreeGroup(vec!["g1".into(), "g2".into()])])
        .expect("valid")
}

fn bar(r: &ReductionContext, s: &str) -> Result<BarWord> {
    BarWord::new(parse_word(s, &r.bar_ctx())?)
}

fn bg(w: BarWord) -> DiffeoExpr {
    DiffeoExpr::Bg(BarbellSpec::unknotted(w))
}

/// Uniform random word with `len` letters over `names`.
fn random_word(
    rng: &mut ChaCha8Rng,
    ctx: &Arc<GroupSpec>,
    names: &[&str],
    len: usize,
) -> Result<Word> {
    let mut w = Word::identity(ctx);
    for _ in 0..len {
        let name = names[rng.gen_range(0..names.len())];
        let mut e = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        w = w.multiply(&Word::generator(ctx, name, e)?)?;
    }
    Ok(w)
}

/// 1. `t⁻ᵏ ≡ -tᵏ⁻¹` for `k = 1..=10`, and `1 ≡ t⁻¹ ≡ 0`.
pub fn s4_kernel_table(reduce: &Reducer) -> Record {
    let outcome = (|| -> Outcome {
        let r = ReductionContext::s4();
        let class = |k: i64| reduce(&RingElement::from_word(r.t(k)));
        let mut bad = Vec::new();
        for k in 1..=10 {
            let expected = r.class_of(&r.t(k - 1))?.checked_neg()?;
            let got = class(-k)?;
            if got != expected {
                bad.push(format!("t^-{k} -> {got}, expected {expected}"));
            }
        }
        for k in [0, -1] {
            let got = class(k)?;
            if !got.is_zero() {
                bad.push(format!("t^{k} -> {got}, expected 0"));
            }
        }
        Ok((
            bad.is_empty(),
            format!("reduce(t^-3) = {}", class(-3)?),
            "-t^2".into(),
            bad.join("; "),
        ))
    })();
    record("s4-kernel-table", outcome)
}

fn sref_corollary() -> Outcome {
    let r = ReductionContext::s4();
    let s = |text: &str| sref_class(&parse_ring(text, r.ctx())?, &r);
    let t = r.class_of(&r.t(1))?;
    let (one, pos, neg) = (s("1")?, s("t")?, s("t^-1")?);
    Ok((
        one.is_zero() && pos == t && neg == t,
        format!("sref(1) = {one}, sref(t) = {pos}, sref(t^-1) = {neg}"),
        "0, t, t".into(),
        String::new(),
    ))
}

fn theta_s4() -> Outcome {
    let r = ReductionContext::s4();
    let one = Word::identity(r.ctx());
    let c = theta_class(&ThetaData::new(one.clone(), one)?, &r)?;
    let t = r.class_of(&r.t(1))?;
    Ok((c == t, c.to_string(), t.to_string(), String::new()))
}

fn wat_implant_f2() -> Outcome {
    let r = f2();
    let b = barbell_class(&BarbellSpec::unknotted(bar(&r, "y*g1*g2^-1*x*g2")?), &r)?;
    let w = theta_class(
        &ThetaData::new(parse_word("g1", r.ctx())?, parse_word("g2", r.ctx())?)?,
        &r,
    )?;
    Ok((b == w, b.to_string(), w.to_string(), String::new()))
}

fn delta_word(m: i64) -> String {
    format!("g*y*g^{}*x*g^2", m - 3)
}

fn implant_d3xs1() -> Outcome {
    let r = zg();
    let mut bad = Vec::new();
    let mut last = (String::new(), String::new());
    for m in 4..=10 {
        let arg =
            barbell_sref_argument(&BarbellSpec::unknotted(bar(&r, &delta_word(m))?), r.ctx())?;
        let expected = parse_ring(&format!("g^{}*t*g", m - 2), r.ctx())?;
        if arg != expected {
            bad.push(format!("m = {m}: {arg}"));
        }
        last = (arg.to_string(), expected.to_string());
    }
    Ok((bad.is_empty(), last.0, last.1, bad.join("; ")))
}

fn list_agreement() -> Outcome {
    let r = zg();
    let mut bad = Vec::new();
    for p in 4..=10 {
        let theta = ThetaData::new(
            parse_word(&format!("g^{}", p - 1), r.ctx())?,
            parse_word("g", r.ctx())?,
        )?;
        let from_theta = RingElement::from_word(theta.guiding_element(&r)?);
        let from_delta =
            barbell_sref_argument(&BarbellSpec::unknotted(bar(&r, &delta_word(p))?), r.ctx())?;
        let certified = diffeo_equal(&DiffeoExpr::Wat(theta), &bg(bar(&r, &delta_word(p))?), &r)?;
        if from_theta != from_delta || !certified.is_certified() {
            bad.push(format!("p = {p}: {from_theta} vs {from_delta}"));
        }
    }
    Ok((
        bad.is_empty(),
        "theta arguments, p = 4..10".into(),
        "delta arguments, p = 4..10".into(),
        bad.join("; "),
    ))
}

fn bar_element_examples() -> Outcome {
    let mut bad = Vec::new();
    let r = f2();
    // (1)
    let arg = barbell_sref_argument(
        &BarbellSpec::unknotted(bar(&r, "y*g1*g2^-1*x*g2")?),
        r.ctx(),
    )?;
    if arg != parse_ring("g1*g2^-1*t*g2", r.ctx())? {
        bad.push(format!("(1): {arg}"));
    }
    // (2), with h1, h2 free
    let h =
        ReductionContext::surgered(vec![FactorSpec::FreeGroup(vec!["h1".into(), "h2".into()])])?;
    for e1 in [-1, 1] {
        for e2 in [-1, 1] {
            let w = bar(&h, &format!("y^{e1}*h1*y^{e2}*h2"))?;
            let arg = barbell_sref_argument(&BarbellSpec::unknotted(w), h.ctx())?;
            let expected = RingElement::from_terms(
                h.ctx(),
                [
                    (e1, parse_word("h1*h2", h.ctx())?),
                    (e2, parse_word("h1*h2*h1^-1", h.ctx())?),
                ],
            )?;
            if arg != expected {
                bad.push(format!("(2) e = ({e1}, {e2}): {arg}"));
            }
        }
    }
    // (3), and the full-mode vanishing of -g1
    let spec = BarbellSpec::unknotted(bar(&r, "g2^-1*y^-1*x^-1*y*x*g2*g1*g2^-1")?);
    let arg = barbell_sref_argument(&spec, r.ctx())?;
    if arg != parse_ring("g1*g2^-1*t*g2 - g1", r.ctx())? {
        bad.push(format!("(3): {arg}"));
    }
    let theta = ThetaData::new(parse_word("g1", r.ctx())?, parse_word("g2", r.ctx())?)?;
    let class = barbell_class(&spec, &r)?;
    if class != theta_class(&theta, &r)? {
        bad.push(format!("(3) class: {class}"));
    }
    if !sref_class(&parse_ring("g1", r.ctx())?, &r)?.is_zero() {
        bad.push("(3): -g1 survives".into());
    }
    Ok((
        bad.is_empty(),
        arg.to_string(),
        "g1*g2^-1*t*g2 - g1".into(),
        bad.join("; "),
    ))
}

fn implant_d4_vx() -> Outcome {
    let r = ReductionContext::s4();
    match diffeo_equal(&bg(bar(&r, "y*x")?), &bg(bar(&r, "y*x^-1")?), &r)? {
        Certificate::CertifiedEqual { lhs, rhs } => Ok((true, lhs, rhs, String::new())),
        Certificate::NotCertified { lhs, rhs } => Ok((false, lhs, rhs, "not certified".into())),
    }
}

fn two_torsion() -> Outcome {
    let r = ReductionContext::s4();
    let mut bad = Vec::new();
    for i in 1..=8 {
        let inv = DiffeoExpr::inverse(bg(bar(&r, &format!("y*x^{i}"))?));
        let pow = DiffeoExpr::power(bg(bar(&r, "y*x")?), i);
        if !diffeo_equal(&inv, &pow, &r)?.is_certified() {
            bad.push(format!("i = {i}"));
        }
    }
    let square = DiffeoExpr::power(bg(bar(&r, "y*x")?), 2);
    let sq = diffeo_equal(&square, &DiffeoExpr::Identity, &r)?;
    if !sq.is_certified() {
        bad.push("bg(y*x)^2 != id".into());
    }
    Ok((
        bad.is_empty(),
        "inv(bg(y*x^i)), bg(y*x)^2".into(),
        "bg(y*x)^i, id".into(),
        bad.join("; "),
    ))
}

fn final_s4_closure(seed: u64) -> Outcome {
    let r = ReductionContext::s4();
    let ctx = r.bar_ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Word::identity(r.ctx());
    let wat = DiffeoExpr::Wat(ThetaData::new(one.clone(), one)?);
    let mut nonzero = 0;
    let mut bad = Vec::new();
    for _ in 0..500 {
        let len = rng.gen_range(1..=8);
        let w = BarWord::new(random_word(&mut rng, &ctx, &["x", "y"], len)?)?;
        let nf = eval_diffeo_expr(&bg(w.clone()), &r)?;
        match nf.s4_scalar {
            Some(0) => {}
            Some(1) => {
                nonzero += 1;
                if !diffeo_equal(&bg(w.clone()), &wat, &r)?.is_certified() {
                    bad.push(w.to_string());
                }
            }
            other => bad.push(format!("{w}: scalar {other:?}")),
        }
    }
    Ok((
        bad.is_empty(),
        format!("{nonzero} of 500 nonzero"),
        "all nonzero equal wat(1,1)".into(),
        bad.join("; "),
    ))
}

/// Rebuilds the barbell argument from a non-canonical split that moves the
/// first `cuts[i]` letters of `f_{i+1}` into `h_i`.
fn argument_from_split(
    factors: &[BarFactor],
    cuts: &[usize],
    ctx: &Arc<GroupSpec>,
) -> Result<RingElement> {
    let r = factors.len();
    let mut f: Vec<Word> = factors.iter().map(|b| b.f.clone()).collect();
    let mut h: Vec<Word> = factors.iter().map(|b| b.h.clone()).collect();
    for i in 0..r - 1 {
        let powers = f[i + 1].powers();
        let cut = cuts[i] % (powers.len() + 1);
        h[i] = Word::from_powers(ctx, powers[..cut].iter().copied())?;
        f[i + 1] = Word::from_powers(ctx, powers[cut..].iter().copied())?;
    }
    let mut prefix = vec![Word::identity(ctx)];
    for i in 0..r {
        let next = prefix[i].multiply(&f[i])?.multiply(&h[i])?;
        prefix.push(next);
    }
    let w = &prefix[r];
    let mut arg = RingElement::zero(ctx);
    for i in 0..r {
        let term = w
            .multiply(&f[i].inverse())?
            .multiply(&prefix[i].inverse())?;
        arg = arg.checked_add(&RingElement::monomial(factors[i].sign.value(), term))?;
    }
    Ok(arg)
}

fn factorization_invariance(seed: u64) -> Outcome {
    let r = f2();
    let ctx = r.bar_ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = GeneratorMap::by_name(&ctx, r.ctx());
    map.set("x", r.t(1))?.set("y", Word::identity(r.ctx()))?;
    let mut words = 0;
    let mut bad = Vec::new();
    while words < 20 {
        let len = rng.gen_range(4..=12);
        let w = BarWord::new(random_word(&mut rng, &ctx, &["g1", "g2", "x", "y"], len)?)?;
        let factors = match barword_factorize(&w) {
            Ok(f) if f.len() >= 2 => f,
            _ => continue,
        };
        words += 1;
        let canonical = barbell_sref_argument(&BarbellSpec::unknotted(w.clone()), r.ctx())?;
        for _ in 0..100 {
            let cuts: Vec<usize> = (0..factors.len()).map(|_| rng.gen_range(0..8)).collect();
            let arg = argument_from_split(&factors, &cuts, &ctx)?.map_generators(&map)?;
            if arg != canonical {
                bad.push(format!("{w} with cuts {cuts:?}: {arg} vs {canonical}"));
                break;
            }
        }
    }
    Ok((
        bad.is_empty(),
        "20 words x 100 splits".into(),
        "one argument per word".into(),
        bad.join("; "),
    ))
}

fn no_self_paired_orbits(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let contexts: [(ReductionContext, &[&str]); 3] = [
        (ReductionContext::s4(), &["t"]),
        (zg(), &["g", "t"]),
        (f2(), &["g1", "g2", "t"]),
    ];
    for (r, names) in &contexts {
        for _ in 0..1000 {
            let len = rng.gen_range(0..=10);
            let h = random_word(&mut rng, r.ctx(), names, len)?;
            let a = r.orbit_canonical_rep(&h)?;
            let b = r.orbit_canonical_rep(&r.sigma(&h)?)?;
            if a == b {
                bad.push(format!("{}: {h}", r.label()));
            }
        }
    }
    Ok((
        bad.is_empty(),
        "3 x 1000 words".into(),
        "no orbit paired with itself".into(),
        bad.join("; "),
    ))
}

fn oracle_equivalence() -> Outcome {
    let r = ReductionContext::s4();
    let mut bad = Vec::new();
    for (k, expected) in S4_CLASS_TABLE {
        let got = r.class_of(&r.t(k))?;
        let want = match expected {
            None => GrasperClass::zero(&r),
            Some((j, c)) => r.class_of(&r.t(j))?.scale(c)?,
        };
        if got != want {
            bad.push(format!("t^{k}: {got} vs {want}"));
        }
    }
    for (i, s) in (1..).zip(S4_SCALAR_TABLE) {
        let got = s4_ps_normal_form(&r.class_of(&r.t(i))?)?;
        if got != s {
            bad.push(format!("scalar of t^{i}: {got} vs {s}"));
        }
    }
    Ok((
        bad.is_empty(),
        "classes of t^k, |k| <= 12; scalars of t^1..t^12".into(),
        "frozen lattice tables".into(),
        bad.join("; "),
    ))
}

fn dax_bookkeeping() -> Outcome {
    let mut bad = Vec::new();
    let r = f2();
    let samples = ["t", "g1*t^-2*g2", "g2^-1*t*g1*t"];
    for s in samples {
        let h = parse_word(s, r.ctx())?;
        let hi = h.inverse();
        let hhi = h.multiply(&h)?.multiply(&hi)?;
        let hhihi = h.multiply(&hi)?.multiply(&hi)?;
        let (p, m) = (Sign::Plus, Sign::Minus);
        let datasets: [Vec<(Sign, Word)>; 4] = [
            vec![(p, hi.clone()), (p, h.clone())],
            vec![(p, h.clone()), (p, hi.clone())],
            vec![(p, hhi.clone()), (p, hhihi)],
            vec![(p, h.clone()), (m, hhi.clone()), (p, hi.clone()), (p, hhi)],
        ];
        let expected =
            RingElement::from_word(h.clone()).checked_add(&RingElement::from_word(hi))?;
        for (i, d) in datasets.iter().enumerate() {
            let got = RingElement::from_double_points(r.ctx(), d)?;
            if got != expected {
                bad.push(format!("h = {s}, dataset {}: {got}", i + 1));
            }
        }
    }
    Ok((
        bad.is_empty(),
        "four double-point datasets".into(),
        "h + h^-1".into(),
        bad.join("; "),
    ))
}

type CheckFn = Box<dyn Fn() -> Outcome + Send + Sync>;

/// Runs the suite with `reduce` standing in for the 4-sphere reduction in the
/// kernel-table check.
pub fn paper_suite_with(seed: u64, reduce: &Reducer) -> Report {
    let checks: Vec<(&str, CheckFn)> = vec![
        ("sref-corollary", Box::new(sref_corollary)),
        ("theta-s4", Box::new(theta_s4)),
        ("wat-implant-f2", Box::new(wat_implant_f2)),
        ("implant-d3xs1", Box::new(implant_d3xs1)),
        ("list-agreement", Box::new(list_agreement)),
        ("bar-element-examples", Box::new(bar_element_examples)),
        ("implant-d4-vx", Box::new(implant_d4_vx)),
        ("two-torsion", Box::new(two_torsion)),
        ("final-s4-closure", Box::new(move || final_s4_closure(seed))),
        (
            "factorization-invariance",
            Box::new(move || factorization_invariance(seed.wrapping_add(1))),
        ),
        (
            "no-self-paired-orbits",
            Box::new(move || no_self_paired_orbits(seed.wrapping_add(2))),
        ),
        ("oracle-equivalence", Box::new(oracle_equivalence)),
        ("dax-bookkeeping", Box::new(dax_bookkeeping)),
    ];
    let results = thread::scope(|s| {
        let first = s.spawn(|| s4_kernel_table(reduce));
        let rest: Vec<_> = checks
            .iter()
            .map(|(name, f)| s.spawn(move || record(name, f())))
            .collect();
        let mut out = vec![first.join().expect("check panicked")];
        out.extend(rest.into_iter().map(|h| h.join().expect("check panicked")));
        out
    });
    Report::new("paper-suite", results)
}

pub fn paper_suite(seed: u64) -> Report {
    let r = ReductionContext::s4();
    paper_suite_with(seed, &|a| r.reduce(a))
}

/// Seed from `GRASPER_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("GRASPER_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}
