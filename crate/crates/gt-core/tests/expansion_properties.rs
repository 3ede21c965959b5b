use gt_core::corpus::{random_word, rng};
use gt_core::expansion::{graded_product, phi_loop, phi_path, reduced_product, symbol, ExpansionConfig};
use gt_core::planar::goldman_bracket_geometric;
use gt_core::word::group_multiply;
use gt_core::GroupWord;
use proptest::prelude::*;
use rand::Rng;

fn word(p: u16, max: usize) -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((1..=p as i32, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..=max)
        .prop_map(|v| GroupWord::from_signed(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_is_multiplicative(u in word(3, 4), v in word(3, 4)) {
        let cfg = ExpansionConfig::new(3, 5).unwrap();
        let lhs = phi_path(&group_multiply(&u, &v), cfg);
        let rhs = graded_product(&phi_path(&u, cfg), &phi_path(&v, cfg)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn bracket_lowers_filtration_by_at_most_one() {
    let cfg = ExpansionConfig::new(2, 6).unwrap();
    let mut r = rng(31);
    let mut seen = 0;
    for _ in 0..200 {
        let factors = |r: &mut rand_chacha::ChaCha8Rng| -> Vec<GroupWord> {
            let k = r.gen_range(1..=2);
            (0..k)
                .map(|_| {
                    let n = r.gen_range(1..=3);
                    random_word(r, 2, n)
                })
                .collect()
        };
        let (fa, fb) = (factors(&mut r), factors(&mut r));
        let (a, b) = (reduced_product(&fa), reduced_product(&fb));
        let (Ok((ra, _)), Ok((rb, _))) = (symbol(&phi_loop(&a, cfg).unwrap()), symbol(&phi_loop(&b, cfg).unwrap()))
        else {
            continue;
        };
        let image = phi_loop(&goldman_bracket_geometric(&a, &b, 2).unwrap(), cfg).unwrap();
        if let Ok((d, _)) = symbol(&image) {
            assert!(d + 1 >= ra + rb, "{fa:?} {fb:?}: degree {d} below {}", ra + rb - 1);
            seen += 1;
        }
    }
    assert!(seen > 5, "only {seen} nonzero brackets");
}
