use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use shirshov::diophantine::{
    build_system, construct_solution, parametrization_rank, pell_closed_form, pell_pair,
    pell_pair_signed, rational, verify_assignment, Assignment, CommPoly, Dioph, SolutionData,
    SystemKind, VarietySystem,
};

fn p(s: &str) -> CommPoly {
    s.parse().unwrap()
}

fn at(var: &str, value: BigRational) -> BTreeMap<String, BigRational> {
    BTreeMap::from([(var.to_string(), value)])
}

/// `(T + R)ⁿ` at an integer `T`, multiplied out in `ℤ[R]/(R² − (T² − 1))`.
fn pell_at(n: u32, t: i64) -> (BigInt, BigInt) {
    let t = BigInt::from(t);
    let disc = &t * &t - 1;
    let (mut x, mut y) = (BigInt::from(1), BigInt::from(0));
    for _ in 0..n {
        let nx = &x * &t + &y * &disc;
        let ny = &x + &y * &t;
        x = nx;
        y = ny;
    }
    (x, y)
}

#[test]
fn pell_pairs_up_to_64() {
    let t = CommPoly::var("T");
    let disc = &t.pow(2) - &CommPoly::one();
    for n in 0..=64u32 {
        let pp = pell_pair(n);
        let lhs = &pp.x.pow(2) - &(&disc * &pp.y.pow(2));
        assert_eq!(lhs, CommPoly::one(), "n = {n}");
        for t0 in [-3i64, 0, 2, 5] {
            let (x, y) = pell_at(n, t0);
            assert_eq!(pp.x.eval(&at("T", rational(t0, 1))).unwrap(), x.into());
            assert_eq!(pp.y.eval(&at("T", rational(t0, 1))).unwrap(), y.into());
        }
        if n == 0 {
            continue;
        }
        assert_eq!(pell_closed_form(n), pp.y, "n = {n}");
        assert_eq!(pp.x.degree(), Some(n));
        assert_eq!(pp.y.degree(), Some(n - 1));
        let y1 = pp.y.eval(&at("T", rational(1, 1))).unwrap();
        assert_eq!(y1, rational(n as i64, 1));
        let shifted = &pp.y - &CommPoly::int(n as i64);
        let z = shifted.div_linear("T", &rational(1, 1)).unwrap();
        assert_eq!(&z * &p("T - 1"), shifted);
    }
}

#[test]
fn pell_small_cases() {
    assert_eq!((pell_pair(0).x, pell_pair(0).y), (p("1"), p("0")));
    assert_eq!((pell_pair(1).x, pell_pair(1).y), (p("T"), p("1")));
    assert_eq!((pell_pair(2).x, pell_pair(2).y), (p("2*T^2 - 1"), p("2*T")));
    assert_eq!(pell_closed_form(1), p("1"));
    assert_eq!(pell_closed_form(3), p("4*T^2 - 1"));
    let (x, y) = pell_pair_signed(-3);
    assert_eq!(x, pell_pair(3).x);
    assert_eq!(y, -&pell_pair(3).y);
}

#[test]
fn system_shapes() {
    for d in 1..=4 {
        let sys = build_system(SystemKind::Real { d }, None).unwrap();
        assert_eq!(
            (sys.variables.len(), sys.equations.len()),
            (5 * d + 2, 3 * d + 1)
        );
        assert!(sys.undeclared().is_empty());
    }
    for (d, e) in [(1, 2), (2, 2), (2, 3), (3, 4)] {
        let sys = build_system(SystemKind::Complex { d, e }, None).unwrap();
        assert_eq!(sys.variables.len(), 5 * d * e + 2 * e);
        assert_eq!(sys.equations.len(), 3 * d * e + e - 1);
        assert!(sys.undeclared().is_empty());
    }
}

/// `x1 = a·x2²`, a small equation whose solutions are easy to list.
fn scaled_square(a: i64) -> Dioph {
    Dioph {
        q: p("x1 - a*x2^2"),
        sigma: BTreeMap::from([("a".to_string(), a)]),
        slots: vec!["x1".into(), "x2".into()],
    }
}

#[test]
fn diophantine_augmentation() {
    let sys = build_system(SystemKind::Real { d: 3 }, Some(&scaled_square(2))).unwrap();
    assert_eq!(sys.equations.len(), 11);
    for (ns, holds) in [
        (vec![8, 2, 1], true),
        (vec![8, -2, 5], true),
        (vec![2, 1, -7], true),
        (vec![4, 2, 1], false),
        (vec![-8, 2, 1], false),
    ] {
        let a = construct_solution(&SolutionData::Real(ns.clone())).unwrap();
        assert_eq!(verify_assignment(&sys, &a).unwrap(), holds, "{ns:?}");
    }

    let sys = build_system(SystemKind::Complex { d: 2, e: 2 }, Some(&scaled_square(1))).unwrap();
    let good = SolutionData::Complex(vec![vec![9, 1], vec![3, 1]]);
    let bad = SolutionData::Complex(vec![vec![9, 1], vec![4, 1]]);
    assert!(verify_assignment(&sys, &construct_solution(&good).unwrap()).unwrap());
    assert!(!verify_assignment(&sys, &construct_solution(&bad).unwrap()).unwrap());
}

#[test]
fn rank_examples() {
    let a = construct_solution(&SolutionData::Real(vec![2])).unwrap();
    assert_eq!(
        parametrization_rank(&a, &at("S", rational(0, 1))).unwrap(),
        1
    );
    assert_eq!(
        parametrization_rank(&a, &at("S", rational(1, 1))).unwrap(),
        1
    );
    let constant = Assignment {
        parameters: vec!["S".into()],
        values: BTreeMap::from([("V1".to_string(), p("2")), ("U1".to_string(), p("1/2"))]),
    };
    assert_eq!(
        parametrization_rank(&constant, &at("S", rational(3, 1))).unwrap(),
        0
    );
}

#[test]
fn serialization_round_trips() {
    let sys = build_system(SystemKind::Complex { d: 2, e: 3 }, Some(&scaled_square(-1))).unwrap();
    let json = serde_json::to_string(&sys).unwrap();
    assert_eq!(serde_json::from_str::<VarietySystem>(&json).unwrap(), sys);
    assert_eq!(VarietySystem::parse_text(&sys.to_string()).unwrap(), sys);

    let a = construct_solution(&SolutionData::Real(vec![-3, 7])).unwrap();
    let json = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<Assignment>(&json).unwrap(), a);
    assert_eq!(Assignment::parse_text(&a.to_string()).unwrap(), a);

    let d = scaled_square(5);
    let json = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<Dioph>(&json).unwrap(), d);
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-20i64..=-1, 1i64..=20]
}

/// Evaluates every equation at the point `param = value`; an independent
/// check of the symbolic substitution.
fn vanishes_at(sys: &VarietySystem, a: &Assignment, value: BigRational) -> bool {
    let point = at(&a.parameters[0], value);
    let coords: BTreeMap<String, BigRational> = a
        .values
        .iter()
        .map(|(k, v)| (k.clone(), v.eval(&point).unwrap()))
        .collect();
    sys.equations
        .iter()
        .all(|eq| eq.poly.eval(&coords).unwrap() == rational(0, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_solutions_verify(ns in prop::collection::vec(nonzero(), 1..=4), num in -9i64..=9, den in 1i64..=5) {
        let sys = build_system(SystemKind::Real { d: ns.len() }, None).unwrap();
        let a = construct_solution(&SolutionData::Real(ns.clone())).unwrap();
        prop_assert!(verify_assignment(&sys, &a).unwrap());
        prop_assert!(vanishes_at(&sys, &a, rational(num, den)));
        prop_assert!(parametrization_rank(&a, &at("S", rational(num, den))).unwrap() >= 1);
    }

    #[test]
    fn tampering_breaks_verification(ns in prop::collection::vec(nonzero(), 1..=3), pick in any::<prop::sample::Index>(), shift in nonzero()) {
        let sys = build_system(SystemKind::Real { d: ns.len() }, None).unwrap();
        let mut a = construct_solution(&SolutionData::Real(ns)).unwrap();
        let name = pick.get(&sys.variables).clone();
        let moved = &a.values[&name] + &CommPoly::int(shift);
        a.values.insert(name, moved);
        prop_assert!(!verify_assignment(&sys, &a).unwrap());
    }

    #[test]
    fn complex_solutions_verify(d in 1usize..=2, e in 2usize..=3, seed in prop::collection::vec(nonzero(), 6)) {
        let rows: Vec<Vec<i64>> = (0..d).map(|i| seed[i * e..(i + 1) * e].to_vec()).collect();
        let sys = build_system(SystemKind::Complex { d, e }, None).unwrap();
        let a = construct_solution(&SolutionData::Complex(rows)).unwrap();
        prop_assert!(verify_assignment(&sys, &a).unwrap());
        prop_assert!(vanishes_at(&sys, &a, rational(3, 2)));
    }

    #[test]
    fn closed_form_matches_integer_oracle(n in 1u32..=64, t0 in -6i64..=6) {
        let (_, y) = pell_at(n, t0);
        prop_assert_eq!(pell_closed_form(n).eval(&at("T", rational(t0, 1))).unwrap(), BigRational::from(y));
    }
}
