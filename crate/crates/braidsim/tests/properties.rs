//! Property-based invariants over randomized braid words and schedules.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use proptest::prelude::*;

use braidsim::analysis::{writhe, BraidWord};
use braidsim::braiding::{
    dressed_populations_pure, propagate, BraidLetter, Orientation, Pair, PureState,
    SchedulePolicy,
};
use braidsim::model::{dressed_frame, ControlParams};

fn arb_letter() -> impl Strategy<Value = BraidLetter> {
    (
        prop_oneof![Just(Pair::P12), Just(Pair::P23), Just(Pair::P13)],
        prop_oneof![Just(Orientation::Over), Just(Orientation::Under)],
        -PI..PI,
    )
        .prop_map(|(pair, orientation, phase)| BraidLetter::new(pair, orientation, phase))
}

fn arb_word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(arb_letter(), 0..=max_len).prop_map(BraidWord::new)
}

fn flipped(word: &BraidWord) -> BraidWord {
    BraidWord::new(
        word.letters
            .iter()
            .map(|l| {
                let o = match l.orientation {
                    Orientation::Over => Orientation::Under,
                    Orientation::Under => Orientation::Over,
                };
                BraidLetter::new(l.pair, o, l.phase)
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn writhe_additive_and_odd(a in arb_word(6), b in arb_word(6)) {
        let mut cat = a.letters.clone();
        cat.extend(b.letters.clone());
        prop_assert_eq!(writhe(&BraidWord::new(cat)), writhe(&a) + writhe(&b));
        prop_assert_eq!(writhe(&flipped(&a)), -writhe(&a));
    }

    #[test]
    fn propagation_preserves_norm_and_populations_sum(
        word in arb_word(4),
        amps in (0.05f64..1.0, 0.05f64..1.0, 0.05f64..1.0, 0.05f64..1.0),
    ) {
        let bg = ControlParams::base_point(1.0);
        let frame = dressed_frame(&bg).unwrap();
        let norm = (amps.0 + amps.1 + amps.2 + amps.3).sqrt();
        let c = [
            C64::new(amps.0.sqrt() / norm, 0.0),
            C64::new(amps.1.sqrt() / norm, 0.0),
            C64::new(amps.2.sqrt() / norm, 0.0),
            C64::new(amps.3.sqrt() / norm, 0.0),
        ];
        let psi = PureState::from_dressed(&c, &frame).unwrap();
        let policy = SchedulePolicy::default();
        let s = policy.schedule(&word.letters, bg).unwrap();
        let traj = propagate(&s, &psi, 8).unwrap();
        for state in &traj.states {
            prop_assert!((state.norm() - 1.0).abs() <= 1e-10);
            let p = dressed_populations_pure(state, &frame);
            let total: f64 = p.iter().sum();
            prop_assert!((total - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn sequential_pi_populations_phase_invariant(
        word in arb_word(3),
        shift in -PI..PI,
    ) {
        let bg = ControlParams::base_point(1.0);
        let frame = dressed_frame(&bg).unwrap();
        let c = [
            C64::new(0.4f64.sqrt(), 0.0),
            C64::new(0.3f64.sqrt(), 0.0),
            C64::new(0.2f64.sqrt(), 0.0),
            C64::new(0.1f64.sqrt(), 0.0),
        ];
        let psi = PureState::from_dressed(&c, &frame).unwrap();
        let policy = SchedulePolicy::default();

        let run = |letters: &[BraidLetter]| {
            let s = policy.schedule(letters, bg).unwrap();
            let traj = propagate(&s, &psi, 2).unwrap();
            dressed_populations_pure(traj.states.last().unwrap(), &frame)
        };
        let baseline = run(&word.letters);
        let shifted: Vec<BraidLetter> = word
            .letters
            .iter()
            .map(|l| BraidLetter::new(l.pair, l.orientation, l.phase + shift))
            .collect();
        let moved = run(&shifted);
        for (a, b) in baseline.iter().zip(&moved) {
            prop_assert!((a - b).abs() <= 1e-8);
        }
    }
}
