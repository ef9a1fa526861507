mod oracles;

use multispace::graphphase::*;
use oracles::SmallGraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn phase(g: &SmallGraph) -> GraphPhase {
    let branes = (0..g.n).map(|i| Brane::new(format!("b{i}"), vec![i as f64, 1.0])).collect();
    let interactions = g
        .edges()
        .into_iter()
        .map(|(u, v)| Interaction::new(format!("b{u}"), format!("b{v}"), vec![(u * v) as f64 + 0.5]))
        .collect();
    build_graph_phase(branes, interactions).unwrap()
}

fn check_verdict(g: &SmallGraph) {
    let p = phase(g);
    let v = is_embeddable(&p, 2).unwrap();
    let expected = !oracles::has_kuratowski_subdivision(g);
    assert_eq!(v.embeddable, expected, "{:?}", g.edges());
    match (&v.witness, &v.obstruction) {
        (Some(w), None) => {
            assert!(w.satisfies_euler());
            let rot = w.rotation();
            for b in p.branes() {
                let mut around: Vec<&str> = rot[b.id.as_str()].clone();
                around.sort();
                let mut nbrs: Vec<String> = p
                    .edge_set()
                    .into_iter()
                    .filter_map(|(a, c)| if a == b.id { Some(c) } else if c == b.id { Some(a) } else { None })
                    .collect();
                nbrs.sort();
                assert_eq!(around, nbrs);
            }
        }
        (None, Some(o)) => {
            let edges = p.edge_set();
            assert!(o.edges.iter().all(|(a, b)| edges.contains(&(a.clone(), b.clone()))));
            let expected_edges = match o.kind {
                KuratowskiKind::K5 => 10,
                KuratowskiKind::K33 => 9,
            };
            assert!(o.edges.len() >= expected_edges);
        }
        _ => panic!("exactly one certificate expected"),
    }
    assert!(is_embeddable(&p, 3).unwrap().embeddable);
    if g.n >= 3 && g.edges().len() > 3 * g.n - 6 {
        assert!(!v.embeddable);
    }
}

#[test]
fn census_up_to_five_vertices() {
    let mut non_planar = 0;
    for n in 1..=5 {
        for g in SmallGraph::census(n) {
            check_verdict(&g);
            non_planar += usize::from(!is_embeddable(&phase(&g), 2).unwrap().embeddable);
        }
    }
    assert_eq!(non_planar, 1);
}

#[test]
fn random_graphs_up_to_eight_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x91a);
    let mut verdicts = [0usize; 2];
    for _ in 0..600 {
        let n = rng.gen_range(5..=8);
        let density = rng.gen_range(0.3..0.9);
        let g = SmallGraph::random(&mut rng, n, density);
        check_verdict(&g);
        verdicts[usize::from(oracles::has_kuratowski_subdivision(&g))] += 1;
    }
    assert!(verdicts[0] > 50 && verdicts[1] > 50, "{verdicts:?}");
}

#[test]
fn line_embedding_matches_placement_search() {
    for n in 1..=6 {
        for g in SmallGraph::census(n) {
            let v = is_embeddable(&phase(&g), 1).unwrap();
            assert_eq!(v.embeddable, oracles::embeds_on_line(&g), "{:?}", g.edges());
        }
    }
}

#[test]
fn kuratowski_graphs() {
    let k5 = SmallGraph::new(5, &(0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect::<Vec<_>>());
    let o = is_embeddable(&phase(&k5), 2).unwrap().obstruction.unwrap();
    assert_eq!((o.kind, o.edges.len(), o.branch_vertices.len()), (KuratowskiKind::K5, 10, 5));
    let k33 = SmallGraph::new(6, &(0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect::<Vec<_>>());
    let o = is_embeddable(&phase(&k33), 2).unwrap().obstruction.unwrap();
    assert_eq!((o.kind, o.edges.len(), o.branch_vertices.len()), (KuratowskiKind::K33, 9, 6));
}

/// Random connected planar graph: a random tree plus chords kept only when
/// the result stays planar according to the brute-force oracle.
fn random_planar<R: Rng>(rng: &mut R) -> SmallGraph {
    let n = rng.gen_range(3..=8);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for _ in 0..rng.gen_range(0..2 * n) {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v || edges.contains(&(u.min(v), u.max(v))) {
            continue;
        }
        edges.push((u.min(v), u.max(v)));
        if oracles::has_kuratowski_subdivision(&SmallGraph::new(n, &edges)) {
            edges.pop();
        }
    }
    SmallGraph::new(n, &edges)
}

fn random_labels<R: Rng>(rng: &mut R, g: &SmallGraph, p: usize, q: usize) -> GraphPhase {
    let branes = (0..g.n)
        .map(|i| Brane::new(format!("b{i}"), (0..p).map(|_| rng.gen_range(-5.0..5.0)).collect()))
        .collect();
    let interactions = g
        .edges()
        .into_iter()
        .map(|(u, v)| Interaction::new(format!("b{u}"), format!("b{v}"), (0..q).map(|_| rng.gen_range(-5.0..5.0)).collect()))
        .collect();
    build_graph_phase(branes, interactions).unwrap()
}

type Affine = (Vec<Vec<f64>>, Vec<f64>);

/// Unit lower-triangular times unit upper-triangular: invertible with a
/// closed-form inverse.
fn random_affine<R: Rng>(rng: &mut R, d: usize) -> (Affine, Affine) {
    let mut lower = vec![vec![0.0; d]; d];
    let mut upper = vec![vec![0.0; d]; d];
    for i in 0..d {
        lower[i][i] = 1.0;
        upper[i][i] = 1.0;
        for j in 0..i {
            lower[i][j] = rng.gen_range(-1.0..1.0);
            upper[j][i] = rng.gen_range(-1.0..1.0);
        }
    }
    let mul = |a: &Vec<Vec<f64>>, b: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    // inverse of a unit triangular matrix by substitution
    let tri_inverse = |m: &Vec<Vec<f64>>, is_lower: bool| -> Vec<Vec<f64>> {
        let mut inv = vec![vec![0.0; d]; d];
        for col in 0..d {
            let mut e = vec![0.0; d];
            e[col] = 1.0;
            let order: Vec<usize> = if is_lower { (0..d).collect() } else { (0..d).rev().collect() };
            let mut x = vec![0.0; d];
            for &i in &order {
                let s: f64 = (0..d).filter(|&k| k != i).map(|k| m[i][k] * x[k]).sum();
                x[i] = e[i] - s;
            }
            for i in 0..d {
                inv[i][col] = x[i];
            }
        }
        inv
    };
    let a = mul(&lower, &upper);
    let a_inv = mul(&tri_inverse(&upper, false), &tri_inverse(&lower, true));
    let shift: Vec<f64> = (0..d).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let back_shift: Vec<f64> = (0..d).map(|i| -(0..d).map(|k| a_inv[i][k] * shift[k]).sum::<f64>()).collect();
    ((a, shift), (a_inv, back_shift))
}

fn apply(m: &Affine, x: &[f64]) -> Vec<f64> {
    m.0.iter().zip(&m.1).map(|(row, s)| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + s).collect()
}

fn transform_of(omega: Affine, lambda: Affine) -> LabelTransform {
    LabelTransform::new(move |x| apply(&omega, x), move |x| apply(&lambda, x))
}

#[test]
fn invertible_affine_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let g = random_planar(&mut rng);
        let (p, q) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
        let phase = random_labels(&mut rng, &g, p, q);
        let (fo, bo) = random_affine(&mut rng, p);
        let (fl, bl) = random_affine(&mut rng, q);
        assert!(round_trip_check(&phase, &transform_of(fo, fl), &transform_of(bo, bl), 2).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transforms_preserve_graph_and_compose(seed in any::<u64>(), k1 in -3.0f64..3.0, s1 in -3.0f64..3.0, k2 in -3.0f64..3.0, s2 in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_planar(&mut rng);
        let phase = random_labels(&mut rng, &g, 3, 2);
        let t1 = LabelTransform::affine(k1, s1, k2, s2);
        let t2 = LabelTransform::new(|x| x.iter().map(|v| v.sin()).collect(), |x| x.iter().rev().copied().collect());
        let once = transform_phase(&phase, &t1, 2).unwrap();
        prop_assert_eq!(once.vertex_count(), phase.vertex_count());
        prop_assert_eq!(once.edge_set(), phase.edge_set());
        let twice = transform_phase(&once, &t2, 2).unwrap();
        let composite = transform_phase(&phase, &t1.then(&t2), 2).unwrap();
        for (a, b) in twice.branes().iter().zip(composite.branes()) {
            prop_assert!(a.omega.iter().zip(&b.omega).all(|(x, y)| (x - y).abs() <= 1e-12));
        }
        for (a, b) in twice.interactions().iter().zip(composite.interactions()) {
            prop_assert!(a.lambda.iter().zip(&b.lambda).all(|(x, y)| (x - y).abs() <= 1e-12));
        }
    }
}
