use std::sync::Arc;

use latpoly::polynomial::points;
use latpoly::{
    classify, commute, self_commuting, table_of, BoundedLattice, Classification, DnfPolynomial, Element,
    Subset, VariableMap,
};
use proptest::prelude::*;

fn lattice_strategy() -> impl Strategy<Value = Arc<BoundedLattice>> {
    prop_oneof![
        (2usize..=5).prop_map(|k| BoundedLattice::chain(k).unwrap()),
        prop::collection::vec(2usize..=3, 2..=3).prop_map(|f| BoundedLattice::product(&f).unwrap()),
    ]
    .prop_map(Arc::new)
}

fn poly_over(l: Arc<BoundedLattice>, n: usize) -> impl Strategy<Value = DnfPolynomial> {
    let k = l.size() as u16;
    prop::collection::vec(0..k, 1 << n)
        .prop_map(move |c| DnfPolynomial::new(l.clone(), n, c.into_iter().map(Element).collect()).unwrap())
}

fn poly_strategy(max_arity: usize) -> impl Strategy<Value = DnfPolynomial> {
    (lattice_strategy(), 1..=max_arity).prop_flat_map(|(l, n)| poly_over(l, n))
}

fn chain_poly_strategy(max_k: usize, max_arity: usize) -> impl Strategy<Value = DnfPolynomial> {
    (2..=max_k, 1..=max_arity)
        .prop_flat_map(|(k, n)| poly_over(Arc::new(BoundedLattice::chain(k).unwrap()), n))
}

fn map_strategy(source: usize, max_target: usize) -> impl Strategy<Value = VariableMap> {
    (1..=max_target).prop_flat_map(move |t| {
        prop::collection::vec(0..t, source).prop_map(move |v| VariableMap::new(v, t).unwrap())
    })
}

fn pointwise_equal(p: &DnfPolynomial, q: &DnfPolynomial) -> bool {
    p.domain().all(|x| p.eval(&x).unwrap() == q.eval(&x).unwrap())
}

proptest! {
    #[test]
    fn lattice_order_laws(l in lattice_strategy()) {
        for a in l.elements() {
            for b in l.elements() {
                let (m, j) = (l.meet(a, b), l.join(a, b));
                prop_assert!(l.leq(m, a) && l.leq(a, j));
                for c in l.elements() {
                    prop_assert_eq!(l.meet(a, l.join(b, c)), l.join(m, l.meet(a, c)));
                }
            }
        }
        let total = l.elements().all(|a| l.elements().all(|b| l.leq(a, b) || l.leq(b, a)));
        prop_assert_eq!(l.is_chain(), total);
        prop_assert!(l.validate().is_valid());
    }

    #[test]
    fn evaluation_is_monotone(p in poly_strategy(3), seed in any::<u64>()) {
        let l = p.lattice();
        let pts: Vec<Vec<Element>> = p.domain().collect();
        let x = &pts[seed as usize % pts.len()];
        for y in &pts {
            if x.iter().zip(y).all(|(&a, &b)| l.leq(a, b)) {
                prop_assert!(l.leq(p.eval(x).unwrap(), p.eval(y).unwrap()));
            }
        }
    }

    #[test]
    fn canonical_coefficients_are_characteristic_values(p in poly_strategy(4)) {
        let c = p.canonicalize();
        for m in 0..1u32 << p.arity() {
            prop_assert_eq!(c.coefficient(Subset(m)), p.eval_at(Subset(m)));
        }
        prop_assert_eq!(c.canonicalize(), c.clone());
        let back = DnfPolynomial::from_boolean_restriction(
            p.lattice_arc().clone(), p.arity(), p.boolean_restriction()).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn inessential_terms_can_be_dropped(p in poly_strategy(3)) {
        let l = p.lattice_arc().clone();
        let c = p.canonicalize();
        let essential = p.essential_terms();
        let kept = std::iter::once((Subset::EMPTY, c.coefficient(Subset::EMPTY)))
            .chain(essential.iter().map(|t| (t.subset, t.coefficient)));
        let q = DnfPolynomial::from_terms(l, p.arity(), kept).unwrap();
        prop_assert!(pointwise_equal(&p, &q));
        // Re-setting an inessential coefficient to the join below it is a no-op.
        for t in c.terms().filter(|t| !t.subset.is_empty()) {
            let below = c.lattice().join_all(t.subset.members().map(|i| c.coefficient(t.subset.remove(i))));
            if below == t.coefficient {
                let mut coeffs = c.coefficients().to_vec();
                coeffs[t.subset.index()] = below;
                let r = DnfPolynomial::new(c.lattice_arc().clone(), c.arity(), coeffs).unwrap();
                prop_assert!(r.equal(&c).unwrap());
            }
        }
    }

    #[test]
    fn essential_variable_matches_perturbation(p in poly_strategy(3)) {
        let l = p.lattice();
        for j in 0..p.arity() {
            let semantic = p.domain().any(|x| {
                let v = p.eval(&x).unwrap();
                l.elements().any(|c| {
                    let mut y = x.clone();
                    y[j] = c;
                    p.eval(&y).unwrap() != v
                })
            });
            prop_assert_eq!(p.essential_variable(j).unwrap(), semantic);
        }
    }

    #[test]
    fn minors_compose(p in poly_strategy(3), seed in any::<u64>()) {
        let n = p.arity();
        let sigma_t = 1 + (seed as usize % 3);
        let tau_t = 1 + (seed as usize / 3 % 3);
        let sigma = VariableMap::new((0..n).map(|i| (seed as usize >> (4 + 2 * i)) % sigma_t).collect(), sigma_t).unwrap();
        let tau = VariableMap::new((0..sigma_t).map(|i| (seed as usize >> (20 + 2 * i)) % tau_t).collect(), tau_t).unwrap();
        let twice = p.simple_minor(&sigma).unwrap().simple_minor(&tau).unwrap();
        let once = p.simple_minor(&sigma.then(&tau).unwrap()).unwrap();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn minor_evaluates_by_substitution(p in poly_strategy(3), sigma in (1usize..=3).prop_flat_map(|m| map_strategy(m, 3))) {
        prop_assume!(sigma.source() == p.arity());
        let r = p.simple_minor(&sigma).unwrap();
        for y in r.domain() {
            let pulled: Vec<Element> = (0..p.arity()).map(|i| y[sigma.apply(i)]).collect();
            prop_assert_eq!(r.eval(&y).unwrap(), p.eval(&pulled).unwrap());
        }
    }

    #[test]
    fn classification_is_representation_independent(p in poly_strategy(4), mask in any::<u32>()) {
        let c = p.canonicalize();
        let class = classify(&p);
        prop_assert_eq!(&class, &classify(&c));
        // Another DNF of the same function: zero out a random subset of the
        // inessential terms.
        let essential: Vec<Subset> = p.essential_terms().iter().map(|t| t.subset).collect();
        let mut coeffs = c.coefficients().to_vec();
        for (m, slot) in coeffs.iter_mut().enumerate().skip(1) {
            if mask >> (m % 32) & 1 == 1 && !essential.contains(&Subset(m as u32)) {
                *slot = c.lattice().bottom();
            }
        }
        let q = DnfPolynomial::new(c.lattice_arc().clone(), c.arity(), coeffs).unwrap();
        prop_assert!(q.equal(&p).unwrap());
        prop_assert_eq!(&class, &classify(&q));
        if let Some(r) = class.to_polynomial(p.lattice_arc().clone()) {
            prop_assert!(r.unwrap().equal(&p).unwrap());
        }
    }

    #[test]
    fn chain_form_invariants(p in chain_poly_strategy(5, 4)) {
        let l = p.lattice();
        if let Classification::ChainForm { weights, chain, .. } = classify(&p) {
            prop_assert!(chain[0].0.len() >= 2);
            for w in chain.windows(2) {
                prop_assert!(w[0].0.is_proper_subset_of(w[1].0));
                prop_assert!(l.lt(w[0].1, w[1].1));
            }
            let base = chain[0].0;
            for i in (0..p.arity()).filter(|&i| !base.contains(i)) {
                prop_assert!(base.members().any(|j| l.leq(weights[i], weights[j])));
            }
        }
    }

    #[test]
    fn fast_decision_matches_oracle_on_chains(p in chain_poly_strategy(4, 3)) {
        let (fast, _) = latpoly::is_self_commuting_fast(&p).unwrap();
        let oracle = self_commuting(&table_of(&p).unwrap()).unwrap();
        prop_assert_eq!(fast, oracle.holds());
        if let Some(w) = oracle.witness() {
            // Replay through polynomial evaluation rather than the table.
            let n = p.arity();
            let rows: Vec<Element> = (0..n).map(|i| p.eval(w.row(i)).unwrap()).collect();
            let cols: Vec<Element> = (0..n)
                .map(|j| p.eval(&(0..n).map(|i| w.matrix[i * n + j]).collect::<Vec<_>>()).unwrap())
                .collect();
            prop_assert_eq!(p.eval(&rows).unwrap(), w.row_first);
            prop_assert_eq!(p.eval(&cols).unwrap(), w.column_first);
            prop_assert_ne!(w.row_first, w.column_first);
        }
    }

    #[test]
    fn structure_implies_self_commuting_off_chains(
        factors in prop::collection::vec(2usize..=3, 2..=2),
        seed in prop::collection::vec(any::<u16>(), 8),
    ) {
        let l = Arc::new(BoundedLattice::product(&factors).unwrap());
        let k = l.size() as u16;
        let n = if l.size() <= 4 { 3 } else { 2 };
        let coeffs = seed.iter().take(1 << n).map(|&s| Element(s % k)).collect();
        let p = DnfPolynomial::new(l, n, coeffs).unwrap();
        if classify(&p).is_structured() {
            prop_assert!(self_commuting(&table_of(&p).unwrap()).unwrap().holds());
        }
    }
}

/// Minors of commuting pairs commute: every commuting pair of binary
/// polynomials over C_3, under every pair of maps [2] → [2].
#[test]
fn minors_of_commuting_pairs_commute() {
    let l = Arc::new(BoundedLattice::chain(3).unwrap());
    let polys: Vec<DnfPolynomial> =
        latpoly::harness::enumerate_polynomials(2, l, &Default::default()).unwrap().collect();
    let tables: Vec<_> = polys.iter().map(|p| table_of(p).unwrap()).collect();
    let maps: Vec<VariableMap> = VariableMap::all(2, 2).collect();
    let mut pairs = 0;
    for (f, tf) in polys.iter().zip(&tables) {
        for (g, tg) in polys.iter().zip(&tables) {
            if !commute(tf, tg).unwrap().holds() {
                continue;
            }
            pairs += 1;
            for sigma in &maps {
                for tau in &maps {
                    let fs = table_of(&f.simple_minor(sigma).unwrap()).unwrap();
                    let gt = table_of(&g.simple_minor(tau).unwrap()).unwrap();
                    assert!(commute(&fs, &gt).unwrap().holds(), "{f} ⊥ {g}, σ={sigma}, τ={tau}");
                }
            }
        }
    }
    assert!(pairs > 20);
}

/// Every point of the domain is visited once, in lexicographic order.
#[test]
fn domain_enumeration_order() {
    let pts: Vec<Vec<Element>> = points(3, 2).collect();
    assert_eq!(pts.len(), 9);
    assert_eq!(pts[1], vec![Element(0), Element(1)]);
    assert_eq!(pts[3], vec![Element(1), Element(0)]);
}
