//! Property-based and randomized invariants that complement the acceptance
//! criteria: exact linear algebra laws, graded algebra laws on random
//! series, and flow/gauge agreement on randomized nilpotent models.

use num::Zero;
use proptest::collection::vec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gaugebern::dgl::{DglElement, FiniteDgl};
use gaugebern::identities::{
    condense, evaluate_condensed, evaluate_identity, identity_space_dimension, image_rank,
    lambda_vector, triples, CondenseMode,
};
use gaugebern::linalg::{in_span, QMatrix};
use gaugebern::rat::{frac, rat, Rat};
use gaugebern::tensor::{bracket, d_series, product, Letter, Series, Word};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| frac(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        vec(vec(small_rat(), c), r).prop_map(move |rows| QMatrix::from_rows(rows, c).unwrap())
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in matrix(5, 5)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(5, 6)) {
        for k in m.kernel_basis() {
            let image = m.mul_vec(&k).unwrap();
            prop_assert!(image.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn rank_invariant_under_row_permutation_and_column_scaling(
        m in matrix(4, 4),
        scale in (-5i64..=5).prop_filter("nonzero", |x| *x != 0),
    ) {
        let rank = m.rank();
        // reverse the rows
        let rows: Vec<Vec<Rat>> = (0..m.rows()).rev().map(|i| m.row(i).to_vec()).collect();
        let permuted = QMatrix::from_rows(rows, m.cols()).unwrap();
        prop_assert_eq!(permuted.rank(), rank);
        // scale the last column
        let mut scaled = m.clone();
        for i in 0..m.rows() {
            let v = scaled.get(i, m.cols() - 1) * rat(scale);
            scaled.set(i, m.cols() - 1, v);
        }
        prop_assert_eq!(scaled.rank(), rank);
    }

    #[test]
    fn span_members_really_combine(gens in vec(vec(small_rat(), 4), 1..4), coefs in vec(small_rat(), 1..4)) {
        let combo = (0..4).map(|j| {
            gens.iter().zip(&coefs).fold(Rat::zero(), |acc, (g, c)| acc + &g[j] * c)
        }).collect::<Vec<_>>();
        prop_assert!(in_span(&combo, &gens).unwrap());
    }
}

fn letter_strategy() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::Alpha), Just(Letter::Beta), Just(Letter::X)]
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    vec(letter_strategy(), 0..=max_len).prop_map(Word)
}

/// Random homogeneous series: all words share one count of degree -1 letters.
fn homogeneous_series(trunc: usize) -> impl Strategy<Value = Series> {
    (0usize..=2).prop_flat_map(move |ab| {
        vec((0usize..=2, any::<u8>(), small_rat()), 1..=3).prop_map(move |terms| {
            let mut s = Series::zero(trunc);
            for (xs, shape, c) in terms {
                let mut letters = Vec::new();
                for j in 0..ab {
                    letters.push(if (shape >> j) & 1 == 0 {
                        Letter::Alpha
                    } else {
                        Letter::Beta
                    });
                }
                for _ in 0..xs {
                    letters.push(Letter::X);
                }
                if !letters.is_empty() {
                    let by = (shape as usize) % letters.len();
                    letters.rotate_right(by);
                }
                s.add_term(Word(letters), c);
            }
            s
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes_on_random_words(w in word_strategy(4)) {
        let mut s = Series::zero(8);
        s.add_term(w, rat(1));
        let dd = d_series(&d_series(&s));
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn bracket_graded_antisymmetry(u in homogeneous_series(6), v in homogeneous_series(6)) {
        let uv = bracket(&u, &v).unwrap();
        let vu = bracket(&v, &u).unwrap();
        // [u,v] + (-1)^{|u||v|} [v,u] = 0
        let (du, dv) = (degree_of(&u), degree_of(&v));
        let total = if (du * dv) % 2 == 0 { uv.add(&vu) } else { uv.sub(&vu) };
        prop_assert!(total.is_zero());
    }

    #[test]
    fn bracket_graded_jacobi(
        u in homogeneous_series(6),
        v in homogeneous_series(6),
        w in homogeneous_series(6),
    ) {
        let (du, dv) = (degree_of(&u), degree_of(&v));
        let lhs = bracket(&u, &bracket(&v, &w).unwrap()).unwrap();
        let r1 = bracket(&bracket(&u, &v).unwrap(), &w).unwrap();
        let r2 = bracket(&v, &bracket(&u, &w).unwrap()).unwrap();
        let rhs = if (du * dv) % 2 == 0 { r1.add(&r2) } else { r1.sub(&r2) };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn differential_lowers_degree_by_one(s in homogeneous_series(6)) {
        use gaugebern::tensor::Homogeneity;
        let before = s.homogeneity();
        let after = d_series(&s).homogeneity();
        match (before, after) {
            (_, Homogeneity::Zero) => {}
            (Homogeneity::Degree(d), Homogeneity::Degree(d2)) => prop_assert_eq!(d2, d - 1),
            other => prop_assert!(false, "unexpected degrees {:?}", other),
        }
    }

    #[test]
    fn product_is_associative(
        u in homogeneous_series(6),
        v in homogeneous_series(6),
        w in homogeneous_series(6),
    ) {
        prop_assert_eq!(
            product(&product(&u, &v), &w),
            product(&u, &product(&v, &w))
        );
    }
}

fn degree_of(s: &Series) -> i64 {
    match s.homogeneity() {
        gaugebern::tensor::Homogeneity::Degree(d) => d,
        _ => 0,
    }
}

#[test]
fn condensation_residuals() {
    // definition-mode condensed sums vanish; symmetric mode leaves exactly
    // the middle term lambda_{n/2} B_{n/2}^2
    use gaugebern::arith::bernoulli;
    for n in (4..=16usize).step_by(2) {
        for t in triples(n).unwrap() {
            let full = lambda_vector(&t);
            assert!(evaluate_identity(&full).is_zero());
            let def = condense(&full, CondenseMode::Definition);
            assert!(evaluate_condensed(&def).is_zero());
            let sym = condense(&full, CondenseMode::Symmetric);
            let residual = evaluate_condensed(&sym);
            let middle = &full.lambda[n / 2] * bernoulli(n / 2) * bernoulli(n / 2);
            assert_eq!(residual, middle, "n={n} t={:?}", t.abc());
        }
    }
}

#[test]
fn image_rank_mode_independent() {
    for n in (4..=20usize).step_by(2) {
        let sym = image_rank(n, CondenseMode::Symmetric).unwrap();
        let def = image_rank(n, CondenseMode::Definition).unwrap();
        assert_eq!(sym, def, "n={n}");
        assert!(sym <= identity_space_dimension(n).unwrap());
    }
}

/// Random two-step nilpotent model: `[V, V] <= W`, `[V, W] = [W, W] = 0`,
/// zero differential. Graded Jacobi holds for any antisymmetric choice of
/// constants, which makes the family safe to randomize.
fn random_two_step(rng: &mut ChaCha8Rng) -> FiniteDgl {
    // V: one degree-0 element x, two degree -1 elements a0, a1
    // W: receives [x, a_i] in degree -1 and [a_i, a_j] in degree -2
    let basis = vec![
        ("x".to_string(), 0),
        ("a0".to_string(), -1),
        ("a1".to_string(), -1),
        ("w0".to_string(), -1),
        ("w1".to_string(), -1),
        ("v0".to_string(), -2),
        ("v1".to_string(), -2),
    ];
    let mut brackets = Vec::new();
    let mut coin = |hi: i64| frac(rng.gen_range(-3..=3), rng.gen_range(1..=hi.max(1)));
    // [x, a_i] lands in span(w0, w1); x even, a_i odd: [a_i, x] = -[x, a_i]
    for (ai, base) in [(1usize, 3usize), (2, 3)] {
        for off in 0..2usize {
            let c = coin(3);
            if c.is_zero() {
                continue;
            }
            brackets.push((0, ai, base + off, c.clone()));
            brackets.push((ai, 0, base + off, -c));
        }
    }
    // [a_i, a_j] lands in span(v0, v1); both odd: [a_j, a_i] = +[a_i, a_j]
    for (i, j) in [(1usize, 1usize), (1, 2), (2, 2)] {
        for off in 0..2usize {
            let c = coin(2);
            if c.is_zero() {
                continue;
            }
            brackets.push((i, j, 5 + off, c.clone()));
            if i != j {
                brackets.push((j, i, 5 + off, c));
            }
        }
    }
    FiniteDgl::from_parts(basis, brackets, vec![]).unwrap()
}

#[test]
fn random_nilpotent_models_flow_equals_gauge() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd61);
    for trial in 0..25 {
        let m = random_two_step(&mut rng);
        let report = m.validate();
        assert!(report.is_valid(), "trial {trial}: {:?}", report.violations);
        let x = {
            let mut x = DglElement::zero(m.dim());
            x.coeffs[0] = frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            x
        };
        let mut a = DglElement::zero(m.dim());
        for i in [1usize, 2, 3, 4] {
            a.coeffs[i] = frac(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        }
        let cmp = m.flow_check(&x, &a, 32).unwrap();
        assert!(cmp.agrees(), "trial {trial}: flow disagrees with gauge");
    }
}

#[test]
fn validator_rejects_single_constant_mutations() {
    use gaugebern::dgl::Violation;
    // start from the truncated interval model and break one law at a time
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/interval2.json");
    let text = std::fs::read_to_string(&path).unwrap();

    // valid as shipped
    let good = FiniteDgl::from_json_str(&text).unwrap();
    assert!(good.validate().is_valid());

    // Jacobi: give [x, [alpha,alpha]] a nonzero value of legal degree
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["brackets"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"i": 2, "j": 3, "k": 4, "coeff": "1"}));
    let broken = FiniteDgl::from_json_str(&v.to_string()).unwrap();
    let report = broken.validate();
    assert!(report
        .violations
        .iter()
        .any(|viol| matches!(viol, Violation::Jacobi { .. })));
    // the mutation is antisymmetry-consistent only if [aa, x] is also set;
    // the single-entry edit must trip that check as well
    assert!(report
        .violations
        .iter()
        .any(|viol| matches!(viol, Violation::Antisymmetry { .. })));

    // Leibniz: drop the -aa part of d(xa)
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["differential"]
        .as_array_mut()
        .unwrap()
        .retain(|e| !(e["i"] == 6 && e["k"] == 3));
    let broken = FiniteDgl::from_json_str(&v.to_string()).unwrap();
    assert!(broken
        .validate()
        .violations
        .iter()
        .any(|viol| matches!(viol, Violation::Leibniz { i: 2, j: 0 })));

    // differential degree: point d(alpha) at a degree -1 element
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["differential"]
        .as_array_mut()
        .unwrap()
        .push(serde_json::json!({"i": 0, "k": 6, "coeff": "1"}));
    let broken = FiniteDgl::from_json_str(&v.to_string()).unwrap();
    assert!(broken
        .validate()
        .violations
        .iter()
        .any(|viol| matches!(viol, Violation::DifferentialDegree { i: 0, k: 6 })));
}
