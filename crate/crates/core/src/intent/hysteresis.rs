use std::collections::BTreeSet;

use super::Thresholds;

/// Unordered view pair, smaller id first.
pub type PairKey = (String, String);

pub fn pair_key(a: &str, b: &str) -> PairKey {
    if a <= b {
        (a.to_owned(), b.to_owned())
    } else {
        (b.to_owned(), a.to_owned())
    }
}

/// Updates the latched set for one pair: a pair latches below the link
/// distance and unlatches only above the break distance.
pub fn hysteresis_gate(
    pair: &PairKey,
    gap: f64,
    latched: &BTreeSet<PairKey>,
    thresholds: &Thresholds,
) -> BTreeSet<PairKey> {
    let mut out = latched.clone();
    if latched.contains(pair) {
        if gap > thresholds.break_distance() {
            out.remove(pair);
        }
    } else if gap < thresholds.link_distance {
        out.insert(pair.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(gaps: &[f64]) -> Vec<bool> {
        let th = Thresholds::default();
        let key = pair_key("b", "a");
        let mut latched = BTreeSet::new();
        gaps.iter()
            .map(|g| {
                latched = hysteresis_gate(&key, *g, &latched, &th);
                latched.contains(&key)
            })
            .collect()
    }

    #[test]
    fn stays_latched_inside_band() {
        assert_eq!(run(&[0.14, 0.16, 0.14]), vec![true, true, true]);
    }

    #[test]
    fn breaks_past_break_distance() {
        assert_eq!(run(&[0.14, 0.20]), vec![true, false]);
        assert_eq!(run(&[0.16, 0.17]), vec![false, false]);
    }

    #[test]
    fn oscillation_latches_once() {
        let gaps: Vec<f64> = (0..100)
            .map(|i| 0.15 + if i % 2 == 0 { 0.01 } else { -0.01 })
            .collect();
        let states = run(&gaps);
        let transitions = states.windows(2).filter(|w| w[0] != w[1]).count()
            + usize::from(states[0]);
        assert_eq!(transitions, 1);
    }
}
