use lights_core::snf::{char_matrix, charpoly_oracle, factor_data, invariant_factors, PolyMatrix};
use lights_core::{Field, Graph, Matrix, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(0..2);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    a
}

/// Determinant of a polynomial matrix by cofactor expansion along row 0.
fn det(m: &[Vec<Poly>], f: Field) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(f);
    }
    let mut acc = Poly::zero(f);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][j] * &det(&minor, f);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Monic gcd of all k x k minors of `pm`.
fn determinantal_divisor(pm: &PolyMatrix, k: usize) -> Poly {
    let f = pm.field();
    let n = pm.rows();
    let mut g = Poly::zero(f);
    for rows in subsets(n, k) {
        for cols in subsets(n, k) {
            let sub: Vec<Vec<Poly>> = rows.iter().map(|&i| cols.iter().map(|&j| pm.get(i, j).clone()).collect()).collect();
            g = g.gcd(&det(&sub, f));
        }
    }
    g
}

#[test]
fn charpoly_routes_agree_on_random_symmetric_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..300 {
        let p = [2u64, 3, 5][trial % 3];
        let f = Field::new(p).unwrap();
        let n = rng.gen_range(1..=8);
        let a = random_symmetric(&mut rng, n);
        let m = Matrix::from_integer_rows(f, &a).unwrap();
        let s = invariant_factors(&m).unwrap();
        assert_eq!(s.len(), n);
        assert_eq!(s.factors().iter().map(|p| p.degree().unwrap()).sum::<usize>(), n);
        for w in s.factors().windows(2) {
            assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        assert!(s.factors().iter().all(Poly::is_monic));
        assert_eq!(s.charpoly(), charpoly_oracle(&a, f).unwrap(), "trial {trial}");
        let fd = factor_data(&s).unwrap();
        assert_eq!(fd.charpoly(f), s.charpoly());
        for (_, es) in fd.iter() {
            assert!(es.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn invariant_factors_match_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for trial in 0..60 {
        let f = Field::new([2u64, 3, 5][trial % 3]).unwrap();
        let n = rng.gen_range(1..=4);
        let m = Matrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.p()));
        let pm = char_matrix(&m).unwrap();
        let s = invariant_factors(&m).unwrap();
        let mut prefix = Poly::one(f);
        for k in 1..=n {
            prefix = &prefix * &s.factors()[k - 1];
            assert_eq!(prefix, determinantal_divisor(&pm, k), "k = {k}, matrix {m:?}");
        }
    }
}

#[test]
fn non_derogatory_matrices_have_one_nontrivial_factor() {
    for m in 1..=12 {
        let s = invariant_factors(&Graph::path(m).adjacency(Field::GF2)).unwrap();
        assert_eq!(s.nontrivial().len(), 1, "P_{m}: {s}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for trial in 0..50 {
        let f = Field::new([2u64, 3, 5][trial % 3]).unwrap();
        let n = rng.gen_range(1..=7);
        let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
        // Companion matrix of x^n + c_{n-1} x^{n-1} + ... + c_0.
        let comp = Matrix::from_fn(f, n, n, |i, j| {
            if j == n - 1 {
                f.neg(coeffs[i])
            } else {
                u32::from(i == j + 1)
            }
        });
        let s = invariant_factors(&comp).unwrap();
        let mut expected = coeffs.clone();
        expected.push(1);
        assert_eq!(s.nontrivial(), &[Poly::from_coeffs(f, expected)]);
    }
}

#[test]
fn factors_divisible_by_x_count_the_nullity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for trial in 0..200 {
        let f = Field::new([2u64, 3, 5][trial % 3]).unwrap();
        let n = rng.gen_range(1..=8);
        let m = Matrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.p()));
        let s = invariant_factors(&m).unwrap();
        let x = Poly::x(f);
        let count = s.factors().iter().filter(|p| x.divides(p)).count();
        assert_eq!(count, m.nullity());
    }
}

#[test]
fn petersen_invariant_factors() {
    let s = invariant_factors(&Graph::petersen().adjacency(Field::GF2)).unwrap();
    let text: Vec<String> = s.factors().iter().map(Poly::to_string).collect();
    assert_eq!(
        text,
        ["1", "1", "1", "1", "1", "x + 1", "x^2 + x", "x^2 + x", "x^2 + x", "x^3 + x"]
    );
    let expected = &Poly::parse(Field::GF2, "x + 1").unwrap().pow(6) * &Poly::x(Field::GF2).pow(4);
    assert_eq!(s.charpoly(), expected);
    assert_eq!(charpoly_oracle(&Graph::petersen().adjacency_integers(), Field::GF2).unwrap(), expected);
}
