use gt_core::corpus::{cyclic_classes, reduced_words};
use gt_core::planar::{bracket_classes_geometric, delta_geometric, mu_geometric};
use gt_core::skein::{bracket_skein_classes, delta_skein, lift_ascending, mu_skein, unit_tensor};
use gt_core::LoopCombo;

#[test]
fn brackets_agree_on_short_classes() {
    for p in [2, 3] {
        let classes = cyclic_classes(p, 2);
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i..] {
                let g = bracket_classes_geometric(a, b, p).unwrap();
                let s = bracket_skein_classes(a, b, p).unwrap();
                assert_eq!(g, s, "[{a}, {b}] with p = {p}");
            }
        }
    }
}

#[test]
fn self_intersection_agrees_up_to_unit_term() {
    for w in reduced_words(2, 4) {
        let lhs = mu_skein(&w, 2).unwrap().plus(&unit_tensor(&w));
        assert_eq!(lhs, mu_geometric(&w, 2).unwrap(), "{w}");
    }
}

#[test]
fn ascending_lifts_need_no_extra_kinks() {
    for w in reduced_words(3, 3) {
        assert_eq!(lift_ascending(&w, 3).unwrap().appended_kinks, 0, "{w}");
    }
}

#[test]
fn cobrackets_agree_on_short_classes() {
    for c in cyclic_classes(2, 3) {
        let x = LoopCombo::basis(c.clone());
        assert_eq!(delta_skein(&x, 2).unwrap(), delta_geometric(&x, 2).unwrap(), "{c}");
    }
}
