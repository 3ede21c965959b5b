use gt_core::chord::*;
use gt_core::coeff::{q, qf};
use gt_core::corpus::rng;
use gt_core::graded::XWord;
use rand::Rng;

fn base_diagrams() -> Vec<ChordDiagram> {
    let mut out = Vec::new();
    for circle in [true, false] {
        for poles in 0..=3 {
            for chords in 0..=2 {
                out.extend(enumerate_diagrams(circle, poles, chords));
            }
        }
    }
    out
}

#[test]
fn four_t_relations_vanish_in_normal_form() {
    let mut checked = 0;
    let mut nontrivial = 0;
    for d in base_diagrams() {
        for rel in four_t_neighbors(&d).unwrap() {
            let t = rel.terms[0].0.t_degree();
            for (term, _) in &rel.terms {
                assert!(term.is_admissible());
                assert_eq!(term.t_degree(), t);
                assert!(term.chord_count() <= 3);
            }
            let defect = four_t_defect(&rel).unwrap();
            assert!(defect.is_zero(), "{d:?} chord {} gap {:?}", rel.chord, rel.gap);
            checked += 1;
            let s = rel.terms.iter().map(|(d, _)| d.s_degree()).min().unwrap();
            if s <= 1
                && rel.terms.iter().any(|(d, _)| {
                    d.s_degree() == s
                        && !chord_normal_form(d, if s == 0 { Quotient::One } else { Quotient::Half }).unwrap().is_zero()
                })
            {
                nontrivial += 1;
            }
        }
    }
    assert!(checked > 600, "{checked}");
    assert!(nontrivial > 100, "{nontrivial} of {checked}");
}

#[test]
fn flip_commutes_with_normal_forms() {
    for d in base_diagrams() {
        for a in [0, 1] {
            let mut d = d.clone();
            d.a_power = a;
            let (f, sign) = d.flip();
            for quotient in [Quotient::One, Quotient::Half] {
                let lhs = chord_normal_form(&f, quotient).unwrap().scale(&q(sign as i64));
                let rhs = flip_normal_form(&chord_normal_form(&d, quotient).unwrap(), quotient);
                assert_eq!(lhs, rhs, "{d:?}");
            }
            let (ff, s2) = f.flip();
            assert_eq!((ff, sign * s2), (d.clone(), 1));
        }
    }
}

fn random_xword<R: Rng>(r: &mut R, max: usize) -> XWord {
    let n = r.gen_range(0..=max);
    XWord((0..n).map(|_| r.gen_range(1..=3u16)).collect())
}

#[test]
fn epsilon_terms_cancel_on_random_triples() {
    let mut r = rng(2024);
    for _ in 0..500 {
        let b = random_xword(&mut r, 4);
        let x = PhiTerm {
            v: random_xword(&mut r, 4),
            w: random_xword(&mut r, 4),
            coeff: qf(r.gen_range(-5..=5), r.gen_range(1..=4)),
        };
        let (e1, e2) = epsilon_cancellation(&b, &x);
        assert!(e1.is_zero(), "{b} {x:?}");
        assert!(e2.is_zero(), "{b}");
    }
}

#[test]
fn lambda_with_no_phi_is_a_section() {
    for w in gt_core::graded::linear_words(3, 4) {
        let t = lambda_alg(&w, Direction::Asc, &[]);
        assert_eq!(lambda_alg_reduce(&t), gt_core::LinComb::basis(w.clone()));
        assert_eq!(t.len(), 2);
    }
}

#[test]
fn empty_word_commutes_with_phi() {
    let x = PhiTerm { v: XWord(vec![1]), w: XWord(vec![2]), coeff: q(1) };
    let t = lambda_alg(&XWord::default(), Direction::Asc, &[x]);
    let phi = a_check_wedge(&t, TermKind::Phi);
    assert!(phi.is_zero());
}

#[test]
fn conway_identity_to_degree_five() {
    let r = conway_exponential_identity(5).unwrap();
    assert!(r.passed);
    for row in &r.rows {
        let k: usize = row[0].parse().unwrap();
        if k.is_multiple_of(2) {
            assert_eq!(row[3], "0");
        }
        assert_eq!(row[2], "0");
        assert_eq!(row[4], "0");
    }
    assert_eq!(r.rows[5][3], "1/1920");
}
