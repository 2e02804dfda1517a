//! One test per acceptance criterion. Each prints a single
//! `[criterion N] PASS|FAIL ...` line (visible with `--nocapture`) and
//! asserts exact equality throughout.

use std::time::Instant;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use logvoa::fock::{apply_h, apply_l, jordan_structure_l0, level_basis, ModuleVector, OmegaSpec, Partition};
use logvoa::intertwiner::{
    check_h_bracket, check_l_minus1, derived_operator, depth_bound, intertwiner_apply,
    mock_log_check, unit_matrix, vertex_operator_apply, IntertwinerSpec, OperatorSeries,
};
use logvoa::logseries::TruncationWindow;
use logvoa::scalar::{central_charge, int, lowest_weight, rat, Rational};
use logvoa::virstruct::{
    chain_vector, check_l0_jordan, fusion_span_check, hidden_intertwiner_check, hidden_spec,
    singular_basis, vir_submodule,
};

fn report(n: u32, ok: bool, what: &str) {
    println!("[criterion {n:>2}] {} {what}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {what}");
}

/// Test-side partition numbers by the plain coin-change recursion.
fn partitions_oracle(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p
}

fn p_at(p: &[u64], d: i64) -> i64 {
    if d < 0 {
        0
    } else {
        p[d as usize] as i64
    }
}

/// Test-side copy of the sharp depth bounds, by eigenvalue case.
fn depth_oracle(m1: usize, m2: usize, lam: &Rational, nu: &Rational) -> usize {
    match (lam.is_zero(), nu.is_zero()) {
        (false, false) => m1 + m2 - 2,
        (false, true) => m2 - 1,
        (true, false) => m1 - 1,
        (true, true) => (m1 - 1).min(m2 - 1),
    }
}

fn spec(a: Rational, m1: usize, m2: usize, lam: Rational, nu: Rational) -> IntertwinerSpec {
    IntertwinerSpec::identity(
        a,
        OmegaSpec::block(lam, m1).unwrap(),
        OmegaSpec::block(nu, m2).unwrap(),
    )
    .unwrap()
}

#[test]
fn criterion_01_depth_table() {
    let start = Instant::now();
    let values = [int(0), int(1), rat(1, 2), int(-2)];
    let w = TruncationWindow::symmetric(8, 0).unwrap();
    let mut bad = Vec::new();
    let mut cases = 0;
    for m1 in 1..=3 {
        for m2 in 1..=3 {
            for lam in &values {
                for nu in &values {
                    let op = OperatorSeries::new(spec(int(0), m1, m2, lam.clone(), nu.clone()), w);
                    let d = op.depth().unwrap() as usize;
                    let expect = depth_oracle(m1, m2, lam, nu);
                    assert_eq!(depth_bound(m1, m2, lam, nu), expect);
                    if d != expect {
                        bad.push((m1, m2, lam.clone(), nu.clone(), d, expect));
                    }
                    cases += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        1,
        bad.is_empty() && secs < 120.0,
        &format!("{cases} specs, depth = table, {secs:.1}s; mismatches {bad:?}"),
    );
}

fn samples_up_to(level: u32, omega_dim: usize) -> Vec<ModuleVector> {
    let mut out = Vec::new();
    for d in 0..=level {
        let ps = Partition::all_of_size(d);
        // First and last partition of each size, on the bottom and top index.
        let mut picks = vec![ps[0].clone()];
        if ps.len() > 1 {
            picks.push(ps[ps.len() - 1].clone());
        }
        for p in picks {
            for j in [0, omega_dim - 1] {
                let v = ModuleVector::vacuum(j).create(&p);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

#[test]
fn criterion_02_axioms() {
    let w = TruncationWindow::symmetric(3, 0).unwrap();
    let mut checks = 0;
    let mut failures = Vec::new();
    for a in [int(0), rat(1, 2)] {
        let specs = [
            spec(a.clone(), 2, 2, int(1), rat(1, 2)),
            spec(a.clone(), 1, 3, int(-2), int(1)),
            spec(a.clone(), 3, 1, int(0), int(0)),
        ];
        for s in specs {
            let op = OperatorSeries::new(s.clone(), w);
            let w1s = {
                let mut v = samples_up_to(1, s.omega1().dim());
                v.push(ModuleVector::monomial(&[2], s.omega1().dim() - 1).unwrap());
                v
            };
            for w1 in &w1s {
                for w2 in samples_up_to(5, s.omega2().dim()) {
                    for n in -3..=3 {
                        let c = check_h_bracket(&op, w1, n, &w2).unwrap();
                        checks += 1;
                        if !c.pass {
                            failures.push(format!("{} h({n}) w1={w1} w2={w2}: {c}", s.summary()));
                        }
                    }
                    let c = check_l_minus1(&op, w1, &w2).unwrap();
                    checks += 1;
                    if !c.pass {
                        failures.push(format!("{} L(-1) w1={w1} w2={w2}: {c}", s.summary()));
                    }
                }
            }
        }
    }
    let s = spec(int(0), 2, 2, int(1), int(1));
    let bad = s.with_t_unchecked(s.t().add(&unit_matrix(4, 4, 3, 0))).unwrap();
    let op = OperatorSeries::new(bad, w);
    let neg = check_h_bracket(&op, &ModuleVector::vacuum(0), 0, &ModuleVector::vacuum(0)).unwrap();
    let negative_ok = !neg.pass && neg.witness.is_some();
    report(
        2,
        failures.is_empty() && negative_ok,
        &format!(
            "{checks} exact checks; corrupted T witness: {}; failures {failures:?}",
            neg.witness.map(|x| x.to_string()).unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_03_depth_lowering() {
    let w = TruncationWindow::symmetric(3, 0).unwrap();
    let cases = [
        (2, 2, int(1), int(1)),
        (3, 2, rat(1, 2), int(-2)),
        (3, 3, int(0), int(0)),
        (2, 3, int(0), int(1)),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (m1, m2, lam, nu) in cases {
        let mut op = OperatorSeries::new(spec(rat(1, 2), m1, m2, lam, nu), w);
        let depth = op.depth().unwrap();
        for _ in 0..depth {
            op = derived_operator(&op).unwrap();
        }
        let d0 = op.depth().unwrap();
        let top1 = op.spec().omega1().dim() - 1;
        let w1 = ModuleVector::vacuum(top1);
        let w2 = ModuleVector::monomial(&[2, 1], op.spec().omega2().dim() - 1).unwrap();
        let mut axioms = check_l_minus1(&op, &w1, &w2).unwrap().pass;
        for n in -2..=2 {
            axioms &= check_h_bracket(&op, &w1, n, &w2).unwrap().pass;
        }
        ok &= d0 == 0 && axioms && derived_operator(&op).is_err();
        notes.push(format!("({m1},{m2}) depth {depth} -> {d0}"));
    }
    report(3, ok, &notes.join(", "));
}

#[test]
fn criterion_04_singular_structure() {
    let m1 = OmegaSpec::one_dim(int(0));
    let dims: Vec<usize> = (0..=9).map(|w| singular_basis(w, &m1, &int(0)).len()).collect();
    let expect: Vec<usize> = (0..=9u32).map(|w| usize::from([0, 1, 4, 9].contains(&w))).collect();
    report(4, dims == expect, &format!("kernel dims by weight 0..9: {dims:?}"));
}

#[test]
fn criterion_05_diagram_arrows() {
    let o2 = OmegaSpec::block(int(0), 2).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for m in 1..=2u32 {
        let sub = vir_submodule(&[chain_vector(m, 2, &o2).unwrap()], &o2, &int(0), 9);
        for mp in 0..=3u32 {
            let member = sub.contains(&chain_vector(mp, 1, &o2).unwrap());
            let expected = mp.abs_diff(m) == 1;
            ok &= member == expected;
            notes.push(format!("u^{mp} in Vir.u^{{2,{m}}}: {member}"));
        }
    }
    report(5, ok, &notes.join(", "));
}

#[test]
fn criterion_06_jordan_block() {
    let o3 = OmegaSpec::block(int(0), 3).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 0..=2u32 {
        let identity = check_l0_jordan(n).unwrap();
        // Test-side: (L(0) - n^2) u^{3,n} must be exactly u^n / 2.
        let u3 = chain_vector(n, 3, &o3).unwrap();
        let u1 = chain_vector(n, 1, &o3).unwrap();
        let mut lhs = apply_l(0, &u3, &o3, &int(0));
        lhs.add_scaled(&u3, &-int((n * n) as i64));
        let direct = lhs == u1.scale(&rat(1, 2));
        let block = jordan_structure_l0(&o3, &int(0), n * n)
            .into_iter()
            .flat_map(|(_, sizes)| sizes)
            .max()
            .unwrap_or(0);
        ok &= identity && direct && block >= 2;
        notes.push(format!("n={n}: identity {identity}, largest L(0) block {block}"));
    }
    report(6, ok, &notes.join("; "));
}

#[test]
fn criterion_07_hidden_intertwiner() {
    let w = TruncationWindow::symmetric(4, 0).unwrap();
    let s = hidden_spec().unwrap();
    let mut ok = logvoa::intertwiner::is_equivariant(s.t(), s.omega1(), s.omega2(), s.omega3());
    let mut notes = Vec::new();
    for m in 0..=1 {
        for n in 0..=1 {
            let r = hidden_intertwiner_check(m, n, &w).unwrap();
            let witness = r.log1_witness.as_ref().map(|(k, v)| format!("x^{k} log: {v}"));
            ok &= r.depth == 1 && witness.is_some() && r.filtration.pass;
            notes.push(format!(
                "(m,n)=({m},{n}) depth {} witness {} filtration {}",
                r.depth,
                witness.unwrap_or_default(),
                r.filtration.pass
            ));
        }
    }
    report(7, ok, &notes.join("; "));
}

#[test]
fn criterion_08_fusion_span() {
    let p = partitions_oracle(16);
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, n, bound) in [(1u32, 1u32, 8u32), (2, 1, 9)] {
        let r = fusion_span_check(m, n, bound).unwrap();
        for l in &r.levels {
            let d = l.weight as i64;
            let mut expect = 0i64;
            let mut k = m.abs_diff(n) as i64;
            while k <= (m + n) as i64 {
                // dim L(1,k^2) at level d - k^2 is p(d-k^2) - p(d-k^2-2k-1).
                expect += p_at(&p, d - k * k) - p_at(&p, d - k * k - 2 * k - 1);
                k += 2;
            }
            ok &= l.computed as i64 == expect;
        }
        let dims: Vec<usize> = r.levels.iter().map(|l| l.computed).collect();
        notes.push(format!("({m},{n}) k in {:?}: dims {dims:?}", r.ks));
    }
    report(8, ok, &notes.join("; "));
}

#[test]
fn criterion_09_character() {
    let p = partitions_oracle(12);
    let mut ok = true;
    for a in [int(0), rat(1, 2), rat(1, 3)] {
        let o = OmegaSpec::one_dim(a);
        for n in 0..=12u32 {
            ok &= level_basis(n, o.dim()).len() as u64 == p[n as usize];
        }
    }
    let mut offsets = Vec::new();
    for a in [int(0), rat(1, 2), rat(1, 3)] {
        // Test-side: h = lambda^2/2 - a lambda, c = 1 - 12 a^2.
        let h = &a * &a / int(2) - &a * &a;
        let c = int(1) - int(12) * &a * &a;
        ok &= lowest_weight(&a, &a) == h && central_charge(&a) == c;
        let off = h - c / int(24);
        ok &= off == rat(-1, 24);
        offsets.push(off.to_string());
    }
    let half = rat(1, 2);
    ok &= central_charge(&half) == int(-2) && lowest_weight(&half, &half) == rat(-1, 8);
    report(9, ok, &format!("dims = p(n) for n <= 12; offsets {offsets:?}; a=1/2: c=-2, h=-1/8"));
}

#[test]
fn criterion_10_mock_operator() {
    let w = TruncationWindow::symmetric(3, 0).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for k in [3u32, 5] {
        let r = mock_log_check(&int(1), &int(1), &int(0), &w, k).unwrap();
        // Test-side: on vacuum legs the x^0 coefficient is exp(log x) cut at K.
        let mut fact = int(1);
        for i in 1..k {
            fact *= int(i as i64);
        }
        let expect = ModuleVector::vacuum(0).scale(&(int(1) / fact));
        ok &= r.top_log == expect && r.l_minus1_pass() && !r.l_minus1.is_empty();
        notes.push(format!("K={k}: log^{} coefficient {}", k - 1, r.top_log));
    }
    report(10, ok, &notes.join("; "));
}

fn small_spec() -> impl Strategy<Value = (usize, usize, i64, i64, bool)> {
    (1usize..=2, 1usize..=2, -2i64..=2, -2i64..=2, any::<bool>())
}

fn monomial() -> impl Strategy<Value = (Vec<u32>, bool)> {
    (prop::collection::vec(1u32..=2, 0..=2), any::<bool>())
}

#[test]
fn criterion_11_window_soundness() {
    let mut runner = TestRunner::new(Config {
        cases: 50,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (small_spec(), monomial(), monomial(), 1i64..=4, 0u8..4);
    let ran = std::cell::Cell::new(0);
    let result = runner.run(&strategy, |((m1, m2, l, n, half_a), (p1, top1), (p2, top2), span, stage)| {
        let a = if half_a { rat(1, 2) } else { int(0) };
        let s = spec(a.clone(), m1, m2, int(l), rat(n, 2));
        let w1 = ModuleVector::monomial(&p1, if top1 { m1 - 1 } else { 0 }).unwrap();
        let w2 = ModuleVector::monomial(&p2, if top2 { m2 - 1 } else { 0 }).unwrap();
        let small = TruncationWindow::symmetric(span, 0).unwrap();
        let large = TruncationWindow::symmetric(span + 4, 0).unwrap();
        let run = |w: &TruncationWindow| match stage {
            0 => intertwiner_apply(&s, &w1, &w2, w),
            1 => intertwiner_apply(&s, &w1, &w2, w)
                .map(|y| y.map_coefficients(|v| apply_h(-1, v, s.omega3()))),
            2 => intertwiner_apply(&s, &w1, &w2, w).map(|y| y.ddx()),
            _ => vertex_operator_apply(
                &ModuleVector::monomial(&p1, 0).unwrap(),
                &w2,
                s.omega2(),
                w,
            ),
        };
        let lo = run(&small).unwrap();
        let hi = run(&large).unwrap();
        prop_assert_eq!(lo.first_difference(&hi).unwrap(), None);
        // Every coefficient reported on the small window appears verbatim.
        for (&(k, j), v) in lo.terms() {
            prop_assert_eq!(&hi.coefficient(k, j).unwrap(), v);
        }
        ran.set(ran.get() + 1);
        Ok(())
    });
    let ran = ran.get();
    let ok = result.is_ok() && ran == 50;
    report(11, ok, &format!("{ran} randomized pipelines agree with span+4; {result:?}"));
}
