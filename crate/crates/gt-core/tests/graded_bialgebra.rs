use gt_core::coeff::q;
use gt_core::graded::*;
use proptest::prelude::*;

#[test]
fn jacobi_on_short_cyclic_words() {
    let r = bialgebra_check(BialgebraAxiom::Jacobi, &cyclic_words(3, 4));
    assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(3)]);
    assert!(r.cases > 10_000);
}

#[test]
fn cojacobi_on_short_cyclic_words() {
    for (p, n) in [(3, 4), (2, 6)] {
        let r = bialgebra_check(BialgebraAxiom::Cojacobi, &cyclic_words(p, n));
        assert!(r.passed(), "{:?}", r.failures);
    }
}

#[test]
fn cocycle_on_short_cyclic_words() {
    let r = bialgebra_check(BialgebraAxiom::Cocycle, &cyclic_words(3, 4));
    assert!(r.passed(), "{:?}", &r.failures[..r.failures.len().min(3)]);
}

#[test]
fn cobracket_is_closed_self_intersection() {
    for w in linear_words(3, 6) {
        assert_eq!(gr_delta_word(w.letters()), alt_trace(&gr_mu_word(w.letters())), "{w}");
    }
}

#[test]
fn the_axioms_are_not_vacuous() {
    let a = CycWord::new(&[1, 2, 2]);
    let b = CycWord::new(&[2, 3, 3]);
    assert!(!gr_bracket_words(a.letters(), b.letters()).is_zero());
    assert!(!gr_delta_word(&[1, 2, 1, 2]).is_zero());
    assert!(!gr_delta_word(&[1, 1, 2, 1, 2]).is_zero());
}

#[test]
fn pairing_cut_of_a_square() {
    let d = gr_delta_word(&[1, 1]);
    assert_eq!(d.coeff(&CycWord::new(&[1]), &CycWord::empty()), q(2));
}

fn word(p: u16, max: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(1..=p, 0..=max)
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric_and_homogeneous(z in word(3, 5), w in word(3, 5)) {
        let zw = gr_bracket_words(&z, &w);
        prop_assert_eq!(zw.neg(), gr_bracket_words(&w, &z));
        for (k, _) in &zw {
            prop_assert_eq!(k.len(), z.len() + w.len() - 1);
        }
    }

    #[test]
    fn rotation_does_not_matter(z in word(3, 5), w in word(3, 5), r in 0usize..5) {
        let mut zr = z.clone();
        if !zr.is_empty() {
            let n = r % zr.len();
            zr.rotate_left(n);
        }
        prop_assert_eq!(gr_bracket_words(&z, &w), gr_bracket_words(&zr, &w));
        prop_assert_eq!(gr_delta_word(&z), gr_delta_word(&zr));
    }

    #[test]
    fn cobracket_and_mu_drop_one_degree(w in word(3, 7)) {
        for ((a, b), _) in gr_delta_word(&w).iter() {
            prop_assert_eq!(a.len() + b.len(), w.len() - 1);
        }
        for ((a, b), _) in &gr_mu_word(&w) {
            prop_assert_eq!(a.len() + b.len(), w.len() - 1);
        }
    }
}
