use curvecount_core::cayley::GenSet;
use curvecount_core::stable::{stable_length, stable_length_current, Current, PowerSchedule};
use curvecount_core::{CyclicClass, Letter, Word, WordMetric};
use num_rational::Rational64;
use proptest::prelude::*;

fn class(max_len: usize, oriented: bool) -> impl Strategy<Value = CyclicClass> {
    prop::collection::vec(0u8..4, 1..=max_len).prop_filter_map("identity", move |codes| {
        let w = Word::reduce(2, codes.into_iter().map(Letter::from_code)).unwrap();
        CyclicClass::new(&w, oriented).ok()
    })
}

fn weight() -> impl Strategy<Value = Rational64> {
    (1i64..10, 1i64..10).prop_map(|(p, q)| Rational64::new(p, q))
}

fn with_ab() -> WordMetric {
    WordMetric::new(GenSet::build(2, &["a", "b", "ab"], 4).unwrap())
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn standard_oracle(c in class(12, false)) {
        let metric = WordMetric::new(GenSet::standard(2));
        let est = stable_length(&c, &metric, &PowerSchedule::Doubling, 16, 64).unwrap();
        prop_assert_eq!(est.value(), Some(r(c.len() as i64, 1)));
        prop_assert!(est.is_certified());
    }

    #[test]
    fn bracket_is_ordered(c in class(8, false)) {
        let metric = with_ab();
        let est = stable_length(&c, &metric, &PowerSchedule::Doubling, 8, 64).unwrap();
        let ell = metric.conj_length(&c, 64).unwrap();
        prop_assert!(est.lower <= est.upper);
        prop_assert!(est.upper <= r(ell as i64, 1));
        prop_assert!(est.lower >= r(c.len() as i64, 2));
    }

    #[test]
    fn homogeneous_under_powers(c in class(6, false), k in 2u32..4) {
        let metric = with_ab();
        let sched = PowerSchedule::All;
        let base = stable_length(&c, &metric, &sched, 4, 64).unwrap();
        let power = stable_length(&c.power(k), &metric, &sched, 1, 64).unwrap();
        let k = r(k as i64, 1);
        prop_assert_eq!(power.lower, k * base.lower);
        prop_assert!(power.upper >= k * base.upper);
    }

    #[test]
    fn flip_invariant(c in class(10, true)) {
        let metric = with_ab();
        let sched = PowerSchedule::Doubling;
        let e1 = stable_length(&c, &metric, &sched, 8, 64).unwrap();
        let e2 = stable_length(&c.inverse(), &metric, &sched, 8, 64).unwrap();
        prop_assert_eq!((e1.lower, e1.upper), (e2.lower, e2.upper));
    }

    #[test]
    fn brackets_add_over_currents(
        a in class(6, false),
        b in class(6, false),
        s in weight(),
        t in weight(),
    ) {
        let metric = with_ab();
        let sched = PowerSchedule::Doubling;
        let mu = Current::single(a, s).unwrap();
        let lambda = Current::single(b, t).unwrap();
        let sl = |x: &Current| stable_length_current(x, &metric, &sched, 4, 64).unwrap();
        let (sum, x, y) = (sl(&mu.add(&lambda)), sl(&mu), sl(&lambda));
        prop_assert_eq!(sum.lower, x.lower + y.lower);
        prop_assert_eq!(sum.upper, x.upper + y.upper);
    }

    #[test]
    fn current_flip_invariant(c in class(8, true), w in weight()) {
        let metric = with_ab();
        let sched = PowerSchedule::Doubling;
        let mu = Current::single(c, w).unwrap();
        let a = stable_length_current(&mu, &metric, &sched, 4, 64).unwrap();
        let b = stable_length_current(&mu.flip(), &metric, &sched, 4, 64).unwrap();
        prop_assert_eq!((a.lower, a.upper), (b.lower, b.upper));
    }
}

/// `a^(5n) b / (5n)` approaches `a` in the space of currents and its stable
/// length approaches `1/5`.
#[test]
fn continuity_witness() {
    let genset = GenSet::build(2, &["a", "b", "aaaaa"], 4).unwrap();
    let metric = WordMetric::new(genset).with_class_table(9).unwrap();
    for n in 1..=8i64 {
        let c = CyclicClass::parse(2, &("a".repeat(5 * n as usize) + "b"), false).unwrap();
        let mu = Current::single(c, r(1, 5 * n)).unwrap();
        let est =
            stable_length_current(&mu, &metric, &PowerSchedule::Explicit(vec![1]), 1, 9).unwrap();
        assert_eq!(est.upper, r(n + 1, 5 * n), "n = {n}");
        assert!(est.lower <= r(1, 5) + r(1, 5 * n));
        assert!(est.upper - r(1, 5) <= r(1, 5 * n));
    }
}

#[test]
fn schedules() {
    assert_eq!(PowerSchedule::Doubling.powers(16), [1, 2, 4, 8, 16]);
    assert_eq!(PowerSchedule::All.powers(4), [1, 2, 3, 4]);
    assert_eq!(PowerSchedule::Explicit(vec![1, 3, 9]).powers(5), [1, 3, 9]);
}
