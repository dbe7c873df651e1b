use super::*;
use crate::derivation::{sigma_neighbourhood, theta_power, theta_sep, theta_sep_union};
use crate::graph::{antihole, complete, connected_graphs, cycle, parse_graph, path, GraphFormat};
use crate::poly::PRIME_ALT;

fn worked_graph() -> Graph {
    parse_graph("n 4\n1 4\n2 4\n3 4\n2 3", GraphFormat::EdgeList).unwrap()
}

fn vs(v: &[usize]) -> VertexSet {
    VertexSet::from_vertices(v.iter().copied())
}

fn worked_basis(g: &Graph) -> Vec<Derivation> {
    vec![
        theta_power(0, 4),
        theta_sep(g, vs(&[4]), vs(&[1])).unwrap(),
        theta_sep(g, vs(&[4]), vs(&[2, 3])).unwrap(),
        theta_sep_union(g, vs(&[3, 4]), vs(&[2])).unwrap(),
    ]
}

/// `dim D_p = Σ_e dim S_{p-e}` for a free module with exponents `e`.
fn free_dimension(n: usize, exponents: &[usize], p: usize) -> usize {
    exponents.iter().filter(|&&e| e <= p).map(|&e| monomial_count(n, p - e)).sum()
}

#[test]
fn dimension_examples() {
    let k3 = complete(3);
    assert_eq!(module_dimension(&k3, 0).unwrap(), 1);
    assert_eq!(module_dimension(&k3, 1).unwrap(), 4);
    assert_eq!(module_dimension(&path(3), 1).unwrap(), 5);
    for g in connected_graphs(5) {
        assert_eq!(module_dimension(&g, 0).unwrap(), 1);
    }
    for n in 2..=5 {
        let exps: Vec<usize> = (0..n).collect();
        for p in 0..=5 {
            assert_eq!(module_dimension(&complete(n), p).unwrap(), free_dimension(n, &exps, p));
        }
    }
}

#[test]
fn reduced_route_matches_exact_rank() {
    for n in 2..=4 {
        for g in connected_graphs(n) {
            for p in 0..=3 {
                assert_eq!(module_dimension(&g, p).unwrap(), module_dimension_exact(&g, p).unwrap(), "{g:?} p={p}");
            }
        }
    }
    for g in connected_graphs(5).into_iter().step_by(3) {
        for p in 0..=2 {
            assert_eq!(module_dimension(&g, p).unwrap(), module_dimension_exact(&g, p).unwrap());
        }
    }
}

#[test]
fn graded_basis_rows_are_members() {
    let g = worked_graph();
    for p in 0..=2 {
        let b = graded_basis(&g, p).unwrap();
        assert_eq!(b.coeff_matrix.len(), module_dimension(&g, p).unwrap());
        for d in b.derivations() {
            assert!(is_member(&g, &d).unwrap());
            assert_eq!(d.pdeg(), Some(p));
        }
    }
}

#[test]
fn span_examples() {
    let g = cycle(5);
    assert_eq!(span_dimension(&g, &[theta_power(0, 5)], 2).unwrap(), monomial_count(5, 2));
    assert_eq!(span_dimension(&g, &[], 2).unwrap(), 0);
    let k3 = complete(3);
    let basis: Vec<_> = (0..3).map(|k| theta_power(k, 3)).collect();
    for p in 0..=4 {
        assert_eq!(span_dimension(&k3, &basis, p).unwrap(), module_dimension(&k3, p).unwrap());
    }
    let bad = Derivation::custom(vec![
        crate::poly::MultiPoly::var(3, 2),
        crate::poly::MultiPoly::zero(3),
        crate::poly::MultiPoly::zero(3),
    ])
    .unwrap();
    assert_eq!(span_dimension(&k3, &[bad], 1), Err(OracleError::NonMember { index: 0 }));
}

#[test]
fn verification_examples() {
    let g = worked_graph();
    let v = verify_generation(&g, &worked_basis(&g), 5).unwrap();
    assert!(v.generates);
    assert_eq!(v.table.len(), 6);
    for row in &v.table {
        assert_eq!(row.module_dim, row.span_dim);
        assert_eq!(row.module_dim, module_dimension_exact(&g, row.p).unwrap());
    }
    let short = &worked_basis(&g)[..3];
    let v = verify_generation(&g, short, 5).unwrap();
    assert!(!v.generates);
    assert_eq!(v.first_failure, Some(2));
    let last = v.table.last().unwrap();
    assert_eq!(last.span_dim, span_dimension(&g, short, 2).unwrap());
    assert!(last.span_dim < last.module_dim);
    assert_eq!(verify_generation(&g, short, 2), Err(OracleError::CutoffTooSmall { cutoff: 2, delta: 3 }));
}

#[test]
fn reduced_span_agrees_with_full_span_below_failure() {
    for g in connected_graphs(4) {
        let gens: Vec<_> = (0..2).map(|k| theta_power(k, 4)).collect();
        let v = verify_generation(&g, &gens, 4).unwrap();
        for row in &v.table {
            assert_eq!(row.span_dim, span_dimension(&g, &gens, row.p).unwrap());
            assert_eq!(row.module_dim, module_dimension_exact(&g, row.p).unwrap());
        }
    }
}

#[test]
fn antihole_six_generators() {
    let g = antihole(6);
    let mut gens: Vec<_> = (0..=3).map(|k| theta_power(k, 6)).collect();
    gens.extend((1..=6).map(|i| sigma_neighbourhood(&g, i).unwrap()));
    assert!(verify_generation(&g, &gens, 6).unwrap().generates);
    assert_eq!(minimal_degree_sequence(&g, 5).unwrap(), vec![0, 1, 2, 3, 3, 3, 3, 3, 3, 3]);
}

#[test]
fn minimal_sequences() {
    assert_eq!(minimal_degree_sequence(&complete(4), 4).unwrap(), vec![0, 1, 2, 3]);
    assert_eq!(minimal_degree_sequence(&worked_graph(), 5).unwrap(), vec![0, 1, 1, 2]);
    assert_eq!(minimal_degree_sequence(&path(3), 3).unwrap(), vec![0, 1, 1]);
    let g = worked_graph();
    let alt = Oracle::with_prime(&g, PRIME_ALT).unwrap();
    assert_eq!(alt.minimal_degree_sequence(5).unwrap(), vec![0, 1, 1, 2]);
}

#[test]
fn sequences_of_small_graphs_agree_across_primes() {
    for g in connected_graphs(5) {
        let cutoff = g.max_degree() + 1;
        let a = Oracle::new(&g).unwrap().minimal_degree_sequence(cutoff).unwrap();
        let b = Oracle::with_prime(&g, PRIME_ALT).unwrap().minimal_degree_sequence(cutoff).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn relabeling_invariance() {
    let g = worked_graph();
    let h = g.relabel(&[3, 1, 4, 2]);
    assert_ne!(g, h);
    assert_eq!(minimal_degree_sequence(&g, 5).unwrap(), minimal_degree_sequence(&h, 5).unwrap());
    for p in 0..4 {
        assert_eq!(module_dimension(&g, p).unwrap(), module_dimension(&h, p).unwrap());
    }
}

#[test]
fn redundancy() {
    let k3 = complete(3);
    let gens: Vec<_> = (0..=3).map(|k| theta_power(k, 3)).collect();
    assert_eq!(find_redundant(&k3, &gens, 4).unwrap(), vec![3]);
    assert_eq!(find_redundant(&k3, &gens[..3], 4).unwrap(), Vec::<usize>::new());
    let mut dup = gens[..3].to_vec();
    dup.push(theta_power(1, 3));
    let r = find_redundant(&k3, &dup, 4).unwrap();
    assert!(r.contains(&3));
    for &i in &r {
        let rest: Vec<_> = dup.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, d)| d.clone()).collect();
        assert!(verify_generation(&k3, &rest, 4).unwrap().generates);
    }
    assert_eq!(find_redundant(&k3, &gens[..2], 4), Err(OracleError::NotGenerating { degree: 2 }));
    let g = worked_graph();
    let mut over = worked_basis(&g);
    over.insert(1, theta_power(1, 4));
    over.push(theta_power(2, 4));
    let kept = Oracle::new(&g).unwrap().minimize(&over, 5).unwrap();
    assert_eq!(kept.len(), 4);
}
