//! Frozen reference values. Exact fractions come from a separate
//! rational-arithmetic path enumeration; the schedule table was tabulated
//! independently from the piecewise definitions.

use num_rational::Ratio;

use polya_core::exact::{
    brute_force_pmf, delta_one_discrepancy, pmf_constant_delta, pmf_constant_delta_dp,
    pmf_delta_one, pmf_general,
};
use polya_core::graph::reconstruct_graph;
use polya_core::io::parse_schedule;
use polya_core::urn::{marginal_draw_prob, new_color_draw_prob};
use polya_core::{DrawHistory, ReinforcementSchedule, UrnState};

type Q = Ratio<i64>;

fn q(n: i64, d: i64) -> Q {
    Ratio::new(n, d)
}

fn as_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn assert_close(got: &[f64], want: &[Q], tol: f64) {
    assert_eq!(got.len(), want.len(), "{got:?}");
    for (g, w) in got.iter().zip(want) {
        assert!((g - as_f64(*w)).abs() <= tol, "{got:?} vs {want:?}");
    }
}

#[test]
fn rational_urn_path() {
    let mut urn: UrnState<Q> = UrnState::new();
    urn.step_forced(1, q(2, 1)).unwrap();
    assert_eq!(urn.composition(), vec![q(3, 4), q(1, 4)]);
    urn.step_forced(2, q(2, 1)).unwrap();
    assert_eq!(urn.composition(), vec![q(3, 7), q(3, 7), q(1, 7)]);
    urn.step_forced(1, q(2, 1)).unwrap();
    assert_eq!(
        urn.composition(),
        vec![q(1, 2), q(3, 10), q(1, 10), q(1, 10)]
    );
    assert_eq!(urn.total_weight(), &q(10, 1));
}

#[test]
fn float_urn_path_matches_rational() {
    let h = DrawHistory::new(ReinforcementSchedule::Constant(2.0), vec![1, 2, 1]).unwrap();
    let comp = h.replay().composition();
    assert_close(&comp, &[q(1, 2), q(3, 10), q(1, 10), q(1, 10)], 1e-15);
}

#[test]
fn example_graph() {
    let h = DrawHistory::new(ReinforcementSchedule::Constant(1.0), vec![1, 1, 2, 2]).unwrap();
    let g = reconstruct_graph(&h);
    assert_eq!(g.edges(), &[(1, 1), (1, 2), (1, 3), (2, 4), (2, 5)]);
}

#[test]
fn unit_reinforcement_color_two_four_steps() {
    let want = [q(16, 35), q(11, 35), q(6, 35), q(2, 35)];
    let s = ReinforcementSchedule::Constant(1.0);
    assert_close(pmf_general(2, 4, &s).unwrap().probs(), &want, 1e-14);
    assert_close(pmf_constant_delta(2, 4, 1.0).unwrap().probs(), &want, 1e-14);
    assert_close(
        pmf_constant_delta_dp(2, 4, 1.0).unwrap().probs(),
        &want,
        1e-14,
    );
    assert_close(pmf_delta_one(2, 4).unwrap().probs(), &want, 1e-14);
    assert_close(brute_force_pmf(2, 4, &s).unwrap().probs(), &want, 1e-14);
}

#[test]
fn first_color_double_reinforcement() {
    let want = [q(0, 1), q(1, 7), q(9, 28), q(15, 28)];
    let s = ReinforcementSchedule::Constant(2.0);
    assert_close(pmf_general(1, 3, &s).unwrap().probs(), &want, 1e-14);
    assert_close(pmf_constant_delta(1, 3, 2.0).unwrap().probs(), &want, 1e-14);
    assert_close(
        pmf_constant_delta_dp(1, 3, 2.0).unwrap().probs(),
        &want,
        1e-14,
    );
}

#[test]
fn half_reinforcement_color_three() {
    let want = [
        q(1215, 2618),
        q(445, 1309),
        q(195, 1309),
        q(54, 1309),
        q(15, 2618),
    ];
    let s = ReinforcementSchedule::Constant(0.5);
    assert_close(pmf_general(3, 6, &s).unwrap().probs(), &want, 1e-14);
    assert_close(pmf_constant_delta(3, 6, 0.5).unwrap().probs(), &want, 1e-14);
    assert_close(
        pmf_constant_delta_dp(3, 6, 0.5).unwrap().probs(),
        &want,
        1e-14,
    );
}

#[test]
fn linearly_growing_reinforcement() {
    let s = ReinforcementSchedule::TableLookup {
        values: (1..=5).map(f64::from).collect(),
        source: None,
    };
    let want = [q(7, 15), q(287, 1350), q(397, 2700), q(289, 2700), q(1, 15)];
    assert_close(pmf_general(2, 5, &s).unwrap().probs(), &want, 1e-14);
}

#[test]
fn new_color_probability() {
    // Δ = 2: 1 / (t + 2(t − 1)).
    let s = ReinforcementSchedule::Constant(2.0);
    assert_eq!(new_color_draw_prob(1, &s), 1.0);
    assert!((new_color_draw_prob(4, &s) - 0.1).abs() < 1e-15);
    assert!((marginal_draw_prob(4, 4, &s).unwrap() - 0.1).abs() < 1e-15);
}

#[test]
fn literal_unit_reinforcement_form_is_off() {
    let gap = delta_one_discrepancy(2, 4).unwrap();
    assert!(gap.is_mismatch(1e-6));
    assert!((gap.uncorrected_mass - 1.0).abs() > 1e-3);
}

const PRESET_TABLE: [(u64, f64, f64); 100] = [
    (1, 1.0, 10.0),
    (18, 1.0, 10.0),
    (76, 1.0, 10.0),
    (101, 1.0, 10.0),
    (177, 1.0, 10.0),
    (183, 1.0, 10.0),
    (209, 1.0, 10.0),
    (233, 1.0, 10.0),
    (238, 1.0, 10.0),
    (243, 1.0, 10.0),
    (251, 1.0, 10.0),
    (283, 1.0, 10.0),
    (357, 1.0, 10.0),
    (517, 1.0, 10.0),
    (709, 1.0, 10.0),
    (769, 1.0, 10.0),
    (820, 1.0, 10.0),
    (838, 1.0, 10.0),
    (885, 1.0, 10.0),
    (966, 1.0, 10.0),
    (991, 1.0, 10.0),
    (999, 1.0, 10.0),
    (1000, 10.0, 10.0),
    (1001, 10.0, 9.99000999000999),
    (1101, 10.0, 9.082652134423252),
    (1342, 10.0, 7.451564828614009),
    (1382, 10.0, 7.23589001447178),
    (1396, 10.0, 7.163323782234957),
    (1418, 10.0, 7.052186177715091),
    (1523, 10.0, 6.5659881812212735),
    (1556, 10.0, 6.426735218508997),
    (1635, 10.0, 6.116207951070336),
    (1720, 10.0, 5.813953488372093),
    (1775, 10.0, 5.633802816901408),
    (1793, 10.0, 5.577244841048522),
    (1817, 10.0, 5.5035773252614195),
    (1860, 10.0, 5.376344086021505),
    (1875, 10.0, 5.333333333333333),
    (1892, 10.0, 5.2854122621564485),
    (1910, 10.0, 5.2356020942408374),
    (1989, 10.0, 5.027652086475616),
    (2000, 10.0, 5.0),
    (2090, 10.0, 5.0),
    (2182, 10.0, 5.0),
    (2328, 10.0, 5.0),
    (2374, 10.0, 5.0),
    (2429, 10.0, 5.0),
    (2486, 10.0, 5.0),
    (2500, 100.0, 5.0),
    (2528, 100.0, 5.0),
    (2601, 100.0, 5.0),
    (2726, 100.0, 5.0),
    (2832, 100.0, 5.0),
    (3000, 100.0, 5.0),
    (3008, 100.0, 4.986702127659575),
    (3036, 100.0, 4.940711462450593),
    (3070, 100.0, 4.88599348534202),
    (3110, 100.0, 4.823151125401929),
    (3123, 100.0, 4.803073967339097),
    (3194, 100.0, 4.69630557294928),
    (3222, 100.0, 4.655493482309125),
    (3223, 100.0, 4.654049022649705),
    (3225, 100.0, 4.651162790697675),
    (3312, 100.0, 4.528985507246377),
    (3395, 100.0, 4.418262150220913),
    (3410, 100.0, 4.39882697947214),
    (3458, 100.0, 4.3377674956622325),
    (3546, 100.0, 4.230118443316413),
    (3588, 100.0, 4.1806020066889635),
    (3596, 100.0, 4.171301446051168),
    (3649, 100.0, 4.110715264456015),
    (3683, 100.0, 4.072766766223188),
    (3766, 100.0, 3.9830058417419014),
    (3845, 100.0, 3.9011703511053315),
    (3869, 100.0, 3.8769707934866893),
    (3935, 100.0, 3.8119440914866582),
    (3997, 100.0, 3.7528146109582186),
    (4000, 100.0, 3.75),
    (4012, 100.0, 3.75),
    (4059, 100.0, 3.75),
    (4062, 100.0, 3.75),
    (4091, 100.0, 3.75),
    (4103, 100.0, 3.75),
    (4115, 100.0, 3.75),
    (4140, 100.0, 3.75),
    (4160, 100.0, 3.75),
    (4166, 100.0, 3.75),
    (4268, 100.0, 3.75),
    (4323, 100.0, 3.75),
    (4436, 100.0, 3.75),
    (4496, 100.0, 3.75),
    (4530, 100.0, 3.75),
    (4559, 100.0, 3.75),
    (4663, 100.0, 3.75),
    (4737, 100.0, 3.75),
    (4814, 100.0, 3.75),
    (4826, 100.0, 3.75),
    (4843, 100.0, 3.75),
    (4860, 100.0, 3.75),
    (4977, 100.0, 3.75),
];

#[test]
fn preset_schedules_match_table() {
    let f = parse_schedule("paper-f").unwrap();
    let g = parse_schedule("paper-g").unwrap();
    for (t, fv, gv) in PRESET_TABLE {
        assert_eq!(f.evaluate(t), fv, "f({t})");
        assert!((g.evaluate(t) - gv).abs() <= 1e-12 * gv, "g({t})");
    }
    assert_eq!(f.evaluate(1500), 10.0);
    assert_eq!(g.evaluate(1600), 6.25);
    assert_eq!(f.evaluate(0), 1.0);
}
