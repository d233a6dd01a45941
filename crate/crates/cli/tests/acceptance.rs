//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines always show up in `cargo test` output.

mod common;

use std::sync::Arc;

use common::lattice::{echelon, smith_invariants};
use common::{class_vector, col, kernel_rows, pivot_order, symmetry_rows, unit, K};
use grasper_cli::suite::{S4_CLASS_TABLE, S4_SCALAR_TABLE};
use grasper_cli::{paper_suite, seed_from_env, Status};
use grasper_core::ring::Sign;
use grasper_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn zg() -> ReductionContext {
    ReductionContext::surgered(vec![FactorSpec::IntegerCyclic("g".into())]).unwrap()
}

fn f2() -> ReductionContext {
    ReductionContext::surgered(vec![FactorSpec::FreeGroup(vec!["g1".into(), "g2".into()])]).unwrap()
}

fn bar(r: &ReductionContext, s: &str) -> BarWord {
    BarWord::new(parse_word(s, &r.bar_ctx()).unwrap()).unwrap()
}

fn bg(w: BarWord) -> DiffeoExpr {
    DiffeoExpr::Bg(BarbellSpec::unknotted(w))
}

fn random_word(rng: &mut ChaCha8Rng, ctx: &Arc<GroupSpec>, names: &[&str], len: usize) -> Word {
    (0..len).fold(Word::identity(ctx), |w, _| {
        let e = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let name = names[rng.gen_range(0..names.len())];
        w.multiply(&Word::generator(ctx, name, e).unwrap()).unwrap()
    })
}

fn kernel_table() -> Check {
    let r = ReductionContext::s4();
    for k in 1..=10 {
        let got = lift(r.class_of(&r.t(-k)))?;
        let want = lift(r.class_of(&r.t(k - 1)))?.scale(-1).unwrap();
        ensure(got == want, || format!("t^-{k}: {got} vs {want}"))?;
    }
    ensure(lift(r.class_of(&r.t(0)))?.is_zero(), || "1 survives".into())?;
    ensure(lift(r.class_of(&r.t(-1)))?.is_zero(), || {
        "t^-1 survives".into()
    })?;
    let shown = lift(r.class_of(&r.t(-3)))?.to_string();
    ensure(shown == "-t^2", || shown)
}

fn selfref() -> Check {
    let r = ReductionContext::s4();
    let t = lift(r.class_of(&r.t(1)))?;
    let s = |x: &str| lift(sref_class(&parse_ring(x, r.ctx()).unwrap(), &r));
    ensure(s("1")?.is_zero(), || "sref(1) != 0".into())?;
    ensure(s("t")? == t, || "sref(t) != t".into())?;
    ensure(s("t^-1")? == t, || "sref(t^-1) != t".into())
}

fn theta_s4() -> Check {
    let r = ReductionContext::s4();
    let one = Word::identity(r.ctx());
    let c = lift(theta_class(&ThetaData::new(one.clone(), one).unwrap(), &r))?;
    ensure(c == lift(r.class_of(&r.t(1)))?, || c.to_string())
}

fn wat_implant() -> Check {
    let r = f2();
    let b = lift(barbell_class(
        &BarbellSpec::unknotted(bar(&r, "y*g1*g2^-1*x*g2")),
        &r,
    ))?;
    let theta = ThetaData::new(
        parse_word("g1", r.ctx()).unwrap(),
        parse_word("g2", r.ctx()).unwrap(),
    )
    .unwrap();
    let w = lift(theta_class(&theta, &r))?;
    ensure(b == w && !b.is_zero(), || format!("{b} vs {w}"))
}

fn implant_d3xs1() -> Check {
    let r = zg();
    for m in 4..=10 {
        let w = bar(&r, &format!("g*y*g^{}*x*g^2", m - 3));
        let arg = lift(barbell_sref_argument(&BarbellSpec::unknotted(w), r.ctx()))?;
        let want = parse_ring(&format!("g^{}*t*g", m - 2), r.ctx()).unwrap();
        ensure(arg == want, || format!("m = {m}: {arg}"))?;
    }
    Ok(())
}

fn list_agreement() -> Check {
    let r = zg();
    for p in 4..=10 {
        let theta = ThetaData::new(
            parse_word(&format!("g^{}", p - 1), r.ctx()).unwrap(),
            parse_word("g", r.ctx()).unwrap(),
        )
        .unwrap();
        let w = bar(&r, &format!("g*y*g^{}*x*g^2", p - 3));
        let a = RingElement::from_word(lift(theta.guiding_element(&r))?);
        let b = lift(barbell_sref_argument(
            &BarbellSpec::unknotted(w.clone()),
            r.ctx(),
        ))?;
        ensure(a == b, || format!("p = {p}: {a} vs {b}"))?;
        let cert = lift(diffeo_equal(&DiffeoExpr::Wat(theta), &bg(w), &r))?;
        ensure(cert.is_certified(), || format!("p = {p}: {cert:?}"))?;
    }
    Ok(())
}

fn bar_elements() -> Check {
    let r = f2();
    let arg = |w: &str, ctx: &ReductionContext| {
        lift(barbell_sref_argument(
            &BarbellSpec::unknotted(bar(ctx, w)),
            ctx.ctx(),
        ))
    };
    let a1 = arg("y*g1*g2^-1*x*g2", &r)?;
    ensure(a1 == parse_ring("g1*g2^-1*t*g2", r.ctx()).unwrap(), || {
        format!("(1): {a1}")
    })?;
    let h = ReductionContext::surgered(vec![FactorSpec::FreeGroup(vec!["h1".into(), "h2".into()])])
        .unwrap();
    for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        let a2 = arg(&format!("y^{e1}*h1*y^{e2}*h2"), &h)?;
        let want = RingElement::from_terms(
            h.ctx(),
            [
                (e1, parse_word("h1*h2", h.ctx()).unwrap()),
                (e2, parse_word("h1*h2*h1^-1", h.ctx()).unwrap()),
            ],
        )
        .unwrap();
        ensure(a2 == want, || format!("(2): {a2}"))?;
    }
    let w3 = "g2^-1*y^-1*x^-1*y*x*g2*g1*g2^-1";
    let a3 = arg(w3, &r)?;
    ensure(
        a3 == parse_ring("g1*g2^-1*t*g2 - g1", r.ctx()).unwrap(),
        || format!("(3): {a3}"),
    )?;
    let theta = ThetaData::new(
        parse_word("g1", r.ctx()).unwrap(),
        parse_word("g2", r.ctx()).unwrap(),
    )
    .unwrap();
    let c3 = lift(barbell_class(&BarbellSpec::unknotted(bar(&r, w3)), &r))?;
    ensure(c3 == lift(theta_class(&theta, &r))?, || {
        format!("(3) class: {c3}")
    })
}

fn implant_d4_vx() -> Check {
    let r = ReductionContext::s4();
    let cert = lift(diffeo_equal(
        &bg(bar(&r, "y*x")),
        &bg(bar(&r, "y*x^-1")),
        &r,
    ))?;
    ensure(cert.is_certified(), || format!("{cert:?}"))
}

fn two_torsion() -> Check {
    let r = ReductionContext::s4();
    for i in 1..=8 {
        let inv = DiffeoExpr::inverse(bg(bar(&r, &format!("y*x^{i}"))));
        let pow = DiffeoExpr::power(bg(bar(&r, "y*x")), i);
        let cert = lift(diffeo_equal(&inv, &pow, &r))?;
        ensure(cert.is_certified(), || format!("i = {i}: {cert:?}"))?;
    }
    let sq = DiffeoExpr::power(bg(bar(&r, "y*x")), 2);
    let cert = lift(diffeo_equal(&sq, &DiffeoExpr::Identity, &r))?;
    ensure(cert.is_certified(), || format!("square: {cert:?}"))
}

fn final_closure(seed: u64) -> Check {
    let r = ReductionContext::s4();
    let ctx = r.bar_ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = Word::identity(r.ctx());
    let wat = DiffeoExpr::Wat(ThetaData::new(one.clone(), one).unwrap());
    for _ in 0..500 {
        let len = rng.gen_range(1..=10);
        let w = BarWord::new(random_word(&mut rng, &ctx, &["x", "y"], len)).unwrap();
        let s = lift(eval_diffeo_expr(&bg(w.clone()), &r))?.s4_scalar;
        ensure(matches!(s, Some(0 | 1)), || format!("{w}: {s:?}"))?;
        if s == Some(1) {
            let cert = lift(diffeo_equal(&bg(w.clone()), &wat, &r))?;
            ensure(cert.is_certified(), || format!("{w}: {cert:?}"))?;
        }
    }
    Ok(())
}

fn factorization_invariance(seed: u64) -> Check {
    let r = f2();
    let ctx = r.bar_ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = GeneratorMap::by_name(&ctx, r.ctx());
    map.set("x", r.t(1))
        .unwrap()
        .set("y", Word::identity(r.ctx()))
        .unwrap();
    let mut tested = 0;
    while tested < 30 {
        let len = rng.gen_range(3..=12);
        let w = BarWord::new(random_word(&mut rng, &ctx, &["g1", "g2", "x", "y"], len)).unwrap();
        let Ok(factors) = barword_factorize(&w) else {
            continue;
        };
        tested += 1;
        let canonical = lift(barbell_sref_argument(
            &BarbellSpec::unknotted(w.clone()),
            r.ctx(),
        ))?;
        // segments between consecutive y letters, as letter lists
        let segs: Vec<Vec<_>> = factors.iter().skip(1).map(|b| b.f.powers()).collect();
        for _ in 0..100 {
            let n = factors.len();
            let mut f: Vec<Word> = factors.iter().map(|b| b.f.clone()).collect();
            let mut h: Vec<Word> = factors.iter().map(|b| b.h.clone()).collect();
            for i in 0..n - 1 {
                let cut = rng.gen_range(0..=segs[i].len());
                h[i] = Word::from_powers(&ctx, segs[i][..cut].iter().copied()).unwrap();
                f[i + 1] = Word::from_powers(&ctx, segs[i][cut..].iter().copied()).unwrap();
            }
            let mut prefix = vec![Word::identity(&ctx)];
            for i in 0..n {
                prefix.push(prefix[i].multiply(&f[i]).unwrap().multiply(&h[i]).unwrap());
            }
            let total = prefix[n].clone();
            let mut arg = RingElement::zero(&ctx);
            for i in 0..n {
                let term = total
                    .multiply(&f[i].inverse())
                    .unwrap()
                    .multiply(&prefix[i].inverse())
                    .unwrap();
                arg = arg
                    .checked_add(&RingElement::monomial(factors[i].sign.value(), term))
                    .unwrap();
            }
            let arg = lift(arg.map_generators(&map))?;
            ensure(arg == canonical, || format!("{w}: {arg} vs {canonical}"))?;
        }
    }
    Ok(())
}

fn self_paired(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let contexts: [(ReductionContext, &[&str]); 3] = [
        (ReductionContext::s4(), &["t"]),
        (zg(), &["g", "t"]),
        (f2(), &["g1", "g2", "t"]),
    ];
    for (r, names) in &contexts {
        for _ in 0..1000 {
            let len = rng.gen_range(0..=12);
            let h = random_word(&mut rng, r.ctx(), names, len);
            let a = lift(r.orbit_canonical_rep(&h))?;
            let b = lift(r.orbit_canonical_rep(&lift(r.sigma(&h))?))?;
            ensure(a != b, || format!("{h} is paired with itself"))?;
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Check {
    // the oracle itself, on hand-checked matrices
    ensure(
        smith_invariants(vec![vec![2, 4], vec![6, 8]]) == [2, 4],
        || "smith 2x2".into(),
    )?;
    ensure(
        smith_invariants(vec![vec![2, 0], vec![0, 3]]) == [1, 6],
        || "smith diag".into(),
    )?;

    let r = ReductionContext::s4();
    let order = pivot_order();

    // kernel lattice: remainders must live on t^1..t^12 and match the library
    let kernel = echelon(kernel_rows(), &order);
    let mut pivots = kernel.pivot_columns();
    pivots.sort();
    let mut expected_pivots: Vec<usize> = (-K..=0).map(col).collect();
    expected_pivots.sort();
    ensure(pivots == expected_pivots, || format!("pivots {pivots:?}"))?;
    for k in -K..=K {
        let oracle = kernel.reduce(unit(k));
        let class = lift(r.class_of(&r.t(k)))?;
        ensure(class.terms().count() <= 1, || format!("t^{k}: {class}"))?;
        ensure(class_vector(&class, &r) == oracle, || {
            format!("t^{k}: {class} vs {oracle:?}")
        })?;
        let frozen = S4_CLASS_TABLE[col(k)];
        let mut fv = vec![0; oracle.len()];
        if let Some((j, c)) = frozen.1 {
            fv[col(j)] = c;
        }
        ensure(frozen.0 == k && fv == oracle, || format!("frozen t^{k}"))?;
    }

    // barbell symmetry on top: Smith form, then the closed form by membership
    let mut full = kernel_rows();
    full.extend(symmetry_rows());
    let inv = smith_invariants(full.clone());
    let nontrivial: Vec<i64> = inv.iter().copied().filter(|&d| d != 1).collect();
    ensure(
        inv.len() == (2 * K + 1) as usize && nontrivial == [2],
        || format!("invariants {inv:?}"),
    )?;
    let lattice = echelon(full, &order);
    ensure(!lattice.contains(unit(1)), || "t dies".into())?;
    for i in 1..=K {
        let c = lift(r.class_of(&r.t(i)))?;
        let s = i64::from(lift(s4_ps_normal_form(&c))?);
        let mut v = unit(i);
        v[col(1)] -= s;
        ensure(lattice.contains(v), || format!("t^{i} is not {s}·t"))?;
        ensure(s as u8 == S4_SCALAR_TABLE[(i - 1) as usize], || {
            format!("frozen scalar t^{i}")
        })?;
    }
    Ok(())
}

fn dax_bookkeeping() -> Check {
    let r = f2();
    for s in ["t", "g1", "g1*t^-2*g2", "g2^-1*t*g1*t^3"] {
        let h = parse_word(s, r.ctx()).unwrap();
        let hi = h.inverse();
        let back = |w: &Word| w.multiply(&h).unwrap().multiply(&hi).unwrap();
        let (p, m) = (Sign::Plus, Sign::Minus);
        let datasets = [
            vec![(p, hi.clone()), (p, h.clone())],
            vec![(p, h.clone()), (p, hi.clone())],
            vec![
                (p, back(&h)),
                (p, h.multiply(&hi).unwrap().multiply(&hi).unwrap()),
            ],
            vec![
                (p, h.clone()),
                (m, back(&h)),
                (p, hi.clone()),
                (p, back(&h)),
            ],
        ];
        let want = lift(
            RingElement::from_word(h.clone()).checked_add(&RingElement::from_word(hi.clone())),
        )?;
        for (i, d) in datasets.iter().enumerate() {
            let got = lift(RingElement::from_double_points(r.ctx(), d))?;
            ensure(got == want, || format!("{s}, dataset {}: {got}", i + 1))?;
        }
    }
    Ok(())
}

type Criterion = Box<dyn Fn() -> Check>;

fn main() {
    let seed = seed_from_env();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("S4 kernel table", Box::new(kernel_table)),
        ("self-referential corollary", Box::new(selfref)),
        ("theta class in S4", Box::new(theta_s4)),
        ("theta implant in F<g1,g2>", Box::new(wat_implant)),
        ("delta barbells in D3xS1", Box::new(implant_d3xs1)),
        ("theta and delta lists agree", Box::new(list_agreement)),
        ("bar element examples", Box::new(bar_elements)),
        (
            "y*x and y*x^-1 barbells agree in S4",
            Box::new(implant_d4_vx),
        ),
        ("2-torsion of bg(y*x)", Box::new(two_torsion)),
        (
            "S4 closure over 500 bar words",
            Box::new(move || final_closure(seed)),
        ),
        (
            "factorization invariance",
            Box::new(move || factorization_invariance(seed ^ 1)),
        ),
        (
            "no self-paired orbits",
            Box::new(move || self_paired(seed ^ 2)),
        ),
        ("lattice oracle equivalence", Box::new(oracle_equivalence)),
        ("dax bookkeeping", Box::new(dax_bookkeeping)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    let started = std::time::Instant::now();
    let suite = paper_suite(seed);
    let elapsed = started.elapsed();
    let suite_ok =
        suite.results.iter().all(|r| r.status == Status::Pass) && elapsed.as_secs_f64() < 5.0;
    println!(
        "{} paper-suite: {} passed, {} failed in {:.2}s",
        if suite_ok { "PASS" } else { "FAIL" },
        suite.passed,
        suite.failed,
        elapsed.as_secs_f64()
    );
    if !suite_ok {
        failed += 1;
    }
    if failed > 0 {
        eprintln!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}
