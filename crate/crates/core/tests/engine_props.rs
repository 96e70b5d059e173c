mod common;

use common::*;
use proptest::prelude::*;
use samuel_core::*;

fn ideal_of(nvars: usize, raws: &[RawPoly]) -> Ideal<PrimeField> {
    let r = ring(nvars);
    let gens = raws.iter().map(|p| poly(r.base(), p)).collect();
    Ideal::new(&r, gens).unwrap()
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn parser_round_trip(raw in raw_poly(3, 4, 6)) {
        let r = poly_ring(3);
        let p = poly(&r, &raw);
        let back = parse_polynomial(&p.to_string(), &r).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn normal_form_idempotent(gens in prop::collection::vec(raw_poly(3, 2, 3), 1..=3), f in raw_poly(3, 3, 5)) {
        let i = ideal_of(3, &gens);
        let f = poly(i.base(), &f);
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        // f - NF(f) lies in I, and no term of NF(f) is divisible by a leading monomial
        prop_assert!(i.contains(&(&f - &nf)).unwrap());
        let gb = i.basis().unwrap();
        prop_assert!(nf.terms().iter().all(|t| gb.divisor_of(&t.mono).is_none()));
    }

    #[test]
    fn groebner_reduction_sound(gens in prop::collection::vec(raw_poly(3, 2, 3), 1..=3),
                                cofactors in prop::collection::vec(raw_poly(3, 2, 3), 3)) {
        let i = ideal_of(3, &gens);
        let r = i.base().clone();
        // every generator reduces to zero, and so does any combination of them
        for g in i.generators() {
            prop_assert!(i.normal_form(g).unwrap().is_zero());
        }
        let member = i
            .generators()
            .iter()
            .zip(&cofactors)
            .fold(Polynomial::zero(&r), |acc, (g, c)| &acc + &(g * &poly(&r, c)));
        prop_assert!(i.normal_form(&member).unwrap().is_zero());
        // the basis elements themselves lie in the ideal of the original generators
        let gb = i.basis().unwrap();
        for b in gb.elements() {
            prop_assert!(i.contains(b).unwrap());
        }
    }

    #[test]
    fn intersection_and_colon_containments(a in prop::collection::vec(raw_poly(3, 2, 3), 1..=2),
                                           b in prop::collection::vec(raw_poly(3, 2, 3), 1..=2)) {
        let ia = ideal_of(3, &a);
        let ib = ideal_of(3, &b);
        let meet = ia.intersect(&ib).unwrap();
        prop_assert!(ia.contains_ideal(&meet).unwrap());
        prop_assert!(ib.contains_ideal(&meet).unwrap());
        prop_assert!(meet.contains_ideal(&ia.product(&ib).unwrap()).unwrap());
        if !ib.is_zero().unwrap() {
            let colon = ia.colon(&ib).unwrap();
            prop_assert!(colon.contains_ideal(&ia).unwrap());
            for c in colon.generators() {
                for g in ib.generators() {
                    prop_assert!(ia.contains(&(c * g)).unwrap());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn ring_axioms(a in raw_poly(3, 3, 4), b in raw_poly(3, 3, 4), c in raw_poly(3, 3, 4)) {
        let r = poly_ring(3);
        let (a, b, c) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_independent_of_construction(raw in raw_poly(3, 3, 6)) {
        let r = poly_ring(3);
        let forward = poly(&r, &raw);
        let mut reversed = raw.clone();
        reversed.reverse();
        let backward = poly(&r, &reversed);
        prop_assert_eq!(forward.terms(), backward.terms());
    }

    #[test]
    fn ideal_equality_is_an_equivalence(a in prop::collection::vec(raw_poly(2, 2, 3), 1..=2),
                                        b in prop::collection::vec(raw_poly(2, 2, 3), 1..=2),
                                        c in prop::collection::vec(raw_poly(2, 2, 3), 1..=2)) {
        let (a, b, c) = (ideal_of(2, &a), ideal_of(2, &b), ideal_of(2, &c));
        prop_assert!(a.equals(&a).unwrap());
        prop_assert_eq!(a.equals(&b).unwrap(), b.equals(&a).unwrap());
        if a.equals(&b).unwrap() && b.equals(&c).unwrap() {
            prop_assert!(a.equals(&c).unwrap());
        }
        // a second generating set of the same ideal compares equal
        if let Some(g) = a.generators().first() {
            let doubled = a.extend(&[g + g]).unwrap();
            prop_assert!(a.equals(&doubled).unwrap());
        }
    }

    #[test]
    fn standard_monomials_count_lattice_points(m in m_primary_monomial(3, 12, 4)) {
        let bound = m.gens.iter().flatten().copied().max().unwrap();
        let count = exponent_box(m.nvars, bound).iter().filter(|e| !divisible(e, &m.gens)).count();
        prop_assert_eq!(m.ideal().colength().unwrap(), count as u64);
    }
}
