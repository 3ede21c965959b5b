use gt_core::corpus::{cyclic_classes, reduced_words};
use gt_core::planar::{
    bracket_classes_geometric, delta_geometric, goldman_bracket_geometric, loop_word, standard_loop,
};
use gt_core::word::{cyclic_canonical, LoopCombo};
use gt_core::CyclicClass;

#[test]
fn standard_loops_read_back_their_words() {
    for p in 1..=3 {
        for w in reduced_words(p, 6) {
            for k in 0..2 {
                let got = loop_word(&standard_loop(&w, k), p).unwrap();
                assert_eq!(cyclic_canonical(&got), cyclic_canonical(&w), "{w} on layer {k}");
                assert_eq!(got, w, "{w} on layer {k}");
            }
        }
    }
}

#[test]
fn bracket_is_antisymmetric_on_the_corpus() {
    let classes = cyclic_classes(2, 3);
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i..] {
            let ab = bracket_classes_geometric(a, b, 2).unwrap();
            let ba = bracket_classes_geometric(b, a, 2).unwrap();
            assert_eq!(ab, ba.neg(), "[{a}, {b}]");
        }
    }
}

#[test]
fn bracket_satisfies_jacobi() {
    let classes: Vec<LoopCombo> =
        cyclic_classes(2, 3).into_iter().filter(|c| !c.is_empty()).map(LoopCombo::basis).collect();
    let br = |x: &LoopCombo, y: &LoopCombo| goldman_bracket_geometric(x, y, 2).unwrap();
    let mut nonzero = 0;
    for (i, x) in classes.iter().enumerate() {
        for (j, y) in classes.iter().enumerate().skip(i + 1) {
            let xy = br(x, y);
            for z in &classes[j + 1..] {
                let total = br(x, &br(y, z)).plus(&br(y, &br(z, x))).plus(&br(z, &xy));
                assert!(total.is_zero(), "{x:?} {y:?} {z:?}");
                if !br(x, &br(y, z)).is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn cobracket_of_the_trivial_loop_vanishes() {
    assert!(delta_geometric(&LoopCombo::basis(CyclicClass::trivial()), 3).unwrap().is_zero());
}

#[test]
fn cobracket_is_antisymmetric() {
    for c in cyclic_classes(2, 4) {
        let d = delta_geometric(&LoopCombo::basis(c.clone()), 2).unwrap();
        for ((a, b), _) in d.iter() {
            assert!(a < b, "{c}");
        }
    }
}
