use lights_core::game::{cartesian_product, count_exponents, sylvester_solve, unvectorize, vectorize};
use lights_core::{Field, Graph, LightsInstance, Matrix, Mode, PressVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn product_switching_matrix_is_the_sylvester_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let g = Graph::random(rng.gen_range(1..=8), 0.5, &mut rng);
        let h = Graph::random(rng.gen_range(1..=8), 0.5, &mut rng);
        let gh = cartesian_product(&g, &h);
        assert_eq!(gh.edge_count(), h.vertex_count() * g.edge_count() + g.vertex_count() * h.edge_count());
        let op = Matrix::sylvester_operator(&g.adjacency(Field::GF2), &h.adjacency(Field::GF2)).unwrap();
        assert_eq!(gh.adjacency(Field::GF2), op);
    }
}

#[test]
fn product_is_commutative_up_to_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let g = Graph::random(m, 0.5, &mut rng);
        let h = Graph::random(n, 0.5, &mut rng);
        let gh = cartesian_product(&g, &h).adjacency(Field::GF2);
        let hg = cartesian_product(&h, &g).adjacency(Field::GF2);
        // (i, j) sits at j*m + i in G x H and at i*n + j in H x G.
        let perm = Matrix::from_fn(Field::GF2, m * n, m * n, |r, c| {
            let (i, j) = (r % m, r / m);
            u32::from(c == i * n + j)
        });
        assert_eq!(perm.mul(&hg).unwrap().mul(&perm.transpose()).unwrap(), gh);
    }
}

#[test]
fn press_solutions_match_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..60 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let g = cartesian_product(&Graph::random(m, 0.5, &mut rng), &Graph::random(n, 0.5, &mut rng));
        let mode = if trial % 2 == 0 { Mode::Open } else { Mode::Closed };
        let size = g.vertex_count();
        let config: Vec<u8> = (0..size).map(|_| rng.gen_range(0..2)).collect();
        let inst = LightsInstance::new(g, mode, config).unwrap();
        let mut brute: Vec<PressVector> = (0u32..1 << size)
            .map(|mask| PressVector((0..size).map(|i| (mask >> i & 1) as u8).collect()))
            .filter(|x| inst.apply(x).iter().all(|&b| b == 0))
            .collect();
        brute.sort();
        match inst.solve_presses() {
            None => assert!(brute.is_empty()),
            Some(sol) => {
                let mut all = sol.enumerate();
                all.sort();
                assert_eq!(all, brute);
            }
        }
    }
}

#[test]
fn rank_counts_solvable_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for trial in 0..40 {
        let n = rng.gen_range(1..=12);
        let g = Graph::random(n, 0.5, &mut rng);
        let mode = if trial % 2 == 0 { Mode::Open } else { Mode::Closed };
        let (r, nu) = count_exponents(&g, mode);
        assert_eq!(r + nu, n);
        let solvable = (0u32..1 << n)
            .filter(|mask| {
                let config = (0..n).map(|i| (mask >> i & 1) as u8).collect();
                LightsInstance::new(g.clone(), mode, config).unwrap().is_solvable()
            })
            .count();
        assert_eq!(solvable, 1 << r);
    }
}

#[test]
fn sylvester_solve_agrees_with_vectorised_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..100 {
        let f = Field::new([2u64, 3][trial % 2]).unwrap();
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = Matrix::from_fn(f, m, m, |_, _| rng.gen_range(0..f.p()));
        let b = Matrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.p()));
        let c = Matrix::from_fn(f, m, n, |_, _| rng.gen_range(0..f.p()));
        let op = Matrix::sylvester_operator(&a, &b).unwrap();
        let direct = op.solve(&vectorize(&c)).unwrap();
        let solved = sylvester_solve(&a, &b, &c).unwrap();
        assert_eq!(direct.is_some(), solved.is_some());
        if let (Some(v), Some(x)) = (direct, solved) {
            assert_eq!(unvectorize(f, &v, m, n), x);
            assert_eq!(a.mul(&x).unwrap().sub(&x.mul(&b).unwrap()).unwrap(), c);
        }
    }
}
