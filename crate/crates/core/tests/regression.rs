mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use common::*;
use cubhom::asts::{ast_complex, ast_integral_homology, AsyncTransitionSystem};
use cubhom::cubical::EuclideanCubicalSet;
use cubhom::intlinalg::{
    homology_of_pair, invariant_factors, rank, smith_normal_form, FGAbelianGroup, IntegerMatrix,
};
use cubhom::msets::{integral_mset_homology, mset_complex, q_precubical, MSetSystem, RightMSet};
use cubhom::precubical::{coefficient_complex, HomologicalSystem, PrecubicalSet};
use cubhom::schema::SimplicialSchema;
use cubhom::trace::{right_module_complex, t_precubical, IndependenceAlphabet, RightModule};

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn torsion(d: i64) -> FGAbelianGroup {
    FGAbelianGroup::from_invariant_factors(0, &big(&[d]))
}

#[test]
fn two_by_two_snf() {
    let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
    assert_eq!(invariant_factors(&a), big(&[2, 4]));
    assert_eq!(naive_invariant_factors(&a), big(&[2, 4]));
    let snf = smith_normal_form(&a);
    assert_eq!(
        snf.t
            .checked_mul(&snf.d)
            .unwrap()
            .checked_mul(&snf.s)
            .unwrap(),
        a
    );
}

#[test]
fn scaled_hilbert_matrices_match_naive_oracle() {
    for n in 1..=8usize {
        let l = (1..2 * n as i64).fold(BigInt::from(1), |acc, k| acc.lcm(&BigInt::from(k)));
        let rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &l / BigInt::from((i + j + 1) as i64))
                    .collect()
            })
            .collect();
        let h = IntegerMatrix::from_rows(&rows).unwrap();
        let fast = invariant_factors(&h);
        assert_eq!(fast, naive_invariant_factors(&h), "n = {n}");
        assert_eq!(fast.len(), n);
        let product = fast.iter().fold(BigInt::from(1), |acc, d| acc * d);
        assert_eq!(product, h.determinant().unwrap().abs(), "n = {n}");
    }
}

#[test]
fn ranks_match_rational_elimination() {
    let mut r = rng(11);
    for _ in 0..200 {
        let rows = rand::Rng::gen_range(&mut r, 0..9);
        let cols = rand::Rng::gen_range(&mut r, 0..9);
        let a = random_matrix(&mut r, rows, cols, 3, 0.4);
        assert_eq!(rank(&a), rational_rank(&a));
        assert_eq!(invariant_factors(&a), naive_invariant_factors(&a));
    }
}

#[test]
fn zig_zag_at_three() {
    // columns alternate (-1, +1) and (+1, -1) down the diagonal
    let p = 3;
    let mut d = vec![vec![0i64; 2 * p]; 2 * p + 1];
    for j in 0..2 * p {
        let s = if j % 2 == 0 { 1 } else { -1 };
        d[j][j] = -s;
        d[j + 1][j] = s;
    }
    let d1 = IntegerMatrix::from_rows(&d).unwrap();
    let h0 = homology_of_pair(&d1, &IntegerMatrix::zeros(0, 2 * p + 1)).unwrap();
    let h1 = homology_of_pair(&IntegerMatrix::zeros(2 * p, 0), &d1).unwrap();
    assert_eq!((h0, h1), (z(1), z(0)));
}

#[test]
fn cubical_regressions() {
    let squares_and_loop = EuclideanCubicalSet::from_generators(
        2,
        &[
            vec![(0, 1), (0, 2)],
            vec![(1, 2), (0, 0)],
            vec![(2, 2), (0, 1)],
            vec![(1, 2), (1, 1)],
        ],
    )
    .unwrap();
    let x = squares_and_loop.to_precubical();
    assert_eq!(x.cell_counts(), vec![8, 10, 2]);
    assert_eq!(x.integral_homology().unwrap(), vec![z(1), z(1), z(0)]);

    let hollow = EuclideanCubicalSet::from_generators(
        2,
        &[
            vec![(0, 1), (0, 0)],
            vec![(0, 1), (1, 1)],
            vec![(0, 0), (0, 1)],
            vec![(1, 1), (0, 1)],
        ],
    )
    .unwrap();
    assert_eq!(
        hollow.to_precubical().integral_homology().unwrap(),
        vec![z(1), z(1)]
    );
}

#[test]
fn goubault_systems_on_loop() {
    let ring = PrecubicalSet::from_indices(
        vec![vec!["v".into()], vec!["e".into()]],
        vec![vec![vec![]], vec![vec![[0, 0]]]],
    )
    .unwrap();
    let (z0, z1) = HomologicalSystem::goubault_systems(&ring);
    let d0 = coefficient_complex(&ring, &z0).unwrap();
    let d1 = coefficient_complex(&ring, &z1).unwrap();
    assert_eq!(d0.boundary(1).unwrap(), &IntegerMatrix::scalar(1));
    assert_eq!(d1.boundary(1).unwrap(), &IntegerMatrix::scalar(-1));
    assert_eq!(d0.homology(), vec![z(0), z(0)]);

    // on a segment only one end survives
    let segment = EuclideanCubicalSet::from_generators(1, &[vec![(0, 1)]])
        .unwrap()
        .to_precubical();
    let (z0, _) = HomologicalSystem::goubault_systems(&segment);
    assert_eq!(
        coefficient_complex(&segment, &z0).unwrap().homology(),
        vec![z(1), z(0)]
    );
}

#[test]
fn trace_monoid_regressions() {
    let torus = IndependenceAlphabet::new(&["a", "b"], &[("a", "b")]).unwrap();
    let g = RightModule::trivial(&torus, 1);
    assert_eq!(
        right_module_complex(&torus, &g).unwrap().homology(),
        vec![z(1), z(2), z(1)]
    );

    let free = IndependenceAlphabet::new(&["a", "b", "c"], &[]).unwrap();
    let g = RightModule::trivial(&free, 1);
    assert_eq!(
        right_module_complex(&free, &g).unwrap().homology(),
        vec![z(1), z(3)]
    );

    // a acts by -1: H_0 = Z/2 and the b-direction is killed
    let g = RightModule::new(
        &torus,
        1,
        vec![IntegerMatrix::scalar(-1), IntegerMatrix::identity(1)],
    )
    .unwrap();
    assert_eq!(
        right_module_complex(&torus, &g).unwrap().homology(),
        vec![torsion(2), torsion(2), z(0)]
    );

    let square = IndependenceAlphabet::generic(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let counts = brute_clique_counts(&square);
    let h = t_precubical(&square).integral_homology().unwrap();
    assert_eq!(h, counts.iter().map(|&c| z(c)).collect::<Vec<_>>());
}

#[test]
fn mset_regressions() {
    let a = IndependenceAlphabet::generic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let one = RightMSet::one_point(&a);
    assert_eq!(
        integral_mset_homology(&a, &one).unwrap(),
        vec![z(1), z(3), z(3), z(1)]
    );
    assert_eq!(q_precubical(&a, &one).cell_counts(), vec![1, 3, 3, 1]);

    // a 4-cycle of independences: H_2 of the two-point set sees its loop
    let a = IndependenceAlphabet::generic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let path = IndependenceAlphabet::generic(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    for (alphabet, expected) in [
        (a, vec![z(0), z(0), z(0), z(0)]),
        (path, vec![z(0), z(0), z(1)]),
    ] {
        let x = RightMSet::two_point(&alphabet);
        let f = MSetSystem::point_system(&alphabet, &x, 0).unwrap();
        assert_eq!(
            mset_complex(&alphabet, &x, &f).unwrap().homology(),
            expected
        );
    }
}

#[test]
fn ast_regressions() {
    let e = IndependenceAlphabet::new(&["e"], &[]).unwrap();
    let looped = AsyncTransitionSystem::new(&["s0"], "s0", e, &[("s0", "e", "s0")]).unwrap();
    looped.validate().unwrap();
    assert_eq!(
        ast_integral_homology(&looped, None).unwrap(),
        vec![z(2), z(2)]
    );
    let x = looped.to_pointed_mset().unwrap();
    let c = ast_complex(&looped, &MSetSystem::constant(looped.alphabet(), &x)).unwrap();
    assert_eq!(c.ranks(), vec![2, 2]);
    assert!(c.boundary(1).unwrap().is_zero());

    let ab = IndependenceAlphabet::new(&["a", "b"], &[("a", "b")]).unwrap();
    let diamond = AsyncTransitionSystem::new(
        &["s0", "s1", "s2", "s3"],
        "s0",
        ab,
        &[
            ("s0", "a", "s1"),
            ("s0", "b", "s2"),
            ("s1", "b", "s3"),
            ("s2", "a", "s3"),
        ],
    )
    .unwrap();
    diamond.validate().unwrap();
    let h = ast_integral_homology(&diamond, None).unwrap();
    assert_eq!(h, vec![z(1), z(2), z(1)]);
    let x = diamond.to_pointed_mset().unwrap();
    let c = ast_complex(&diamond, &MSetSystem::constant(diamond.alphabet(), &x)).unwrap();
    assert_eq!(naive_homology(&c), h);

    // I empty: nothing above degree one
    let free = IndependenceAlphabet::new(&["a", "b"], &[]).unwrap();
    let line =
        AsyncTransitionSystem::new(&["s", "t"], "s", free, &[("s", "a", "t"), ("t", "b", "s")])
            .unwrap();
    let h = ast_integral_homology(&line, Some(4)).unwrap();
    assert!(h[2..].iter().all(FGAbelianGroup::is_trivial));
}

#[test]
fn schema_regressions() {
    for k in 1..=5 {
        let s = SimplicialSchema::full_simplex((0..k).map(|v| v.to_string()).collect()).unwrap();
        let h = s.homology();
        assert_eq!(h[0], z(1));
        assert!(h[1..].iter().all(FGAbelianGroup::is_trivial), "k = {k}");
        assert_eq!(naive_homology(&s.complex()), h);
    }
    let triangle = SimplicialSchema::from_maximal_faces(
        vec!["x".into(), "y".into(), "z".into()],
        &[vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap();
    assert_eq!(triangle.homology(), vec![z(1), z(1)]);
}
