//! Law sweeps over independent inputs, data-parallel when the `parallel`
//! feature is on. Verdicts are combined in input order, so the reported
//! witness is the first failing input regardless of scheduling.

use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Parallel,
    Sequential,
}

impl Exec {
    /// Whether parallel execution is actually available in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `f` applied to every item, results in input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Conjunction of `check` over all items: the first `Fails` in input
    /// order if any, else the first `Unknown`, else `Holds`.
    pub fn all<T, F>(self, items: &[T], check: F) -> Verdict
    where
        T: Sync,
        F: Fn(&T) -> Verdict + Sync + Send,
    {
        if !self.is_parallel() {
            let mut acc = Verdict::Holds;
            for item in items {
                acc = acc.and(check(item));
                if acc.is_fails() {
                    break;
                }
            }
            return acc;
        }
        self.map(items, check).into_iter().fold(Verdict::Holds, Verdict::and)
    }

    /// Number of items satisfying `pred`.
    pub fn count<T, F>(self, items: &[T], pred: F) -> usize
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        self.map(items, pred).into_iter().filter(|&b| b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Witness;

    #[test]
    fn first_failure_wins_in_both_modes() {
        let items: Vec<u32> = (0..200).collect();
        let check = |&i: &u32| {
            if i % 37 == 36 {
                Verdict::fails(Witness::new("bad").item("i", i))
            } else if i == 5 {
                Verdict::unknown("bounded")
            } else {
                Verdict::Holds
            }
        };
        let par = Exec::Parallel.all(&items, check);
        let seq = Exec::Sequential.all(&items, check);
        assert_eq!(par, seq);
        assert_eq!(par.witness().unwrap().get("i"), Some("36"));
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        assert_eq!(Exec::Parallel.map(&items, |x| x * 2), Exec::Sequential.map(&items, |x| x * 2));
    }
}
