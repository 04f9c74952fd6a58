//! Execution strategy for the bounded searches. Every routine here returns
//! results in input order, so the outcome never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

// The default depends on the `parallel` feature, so it cannot be derived.
#[allow(clippy::derivable_impls)]
impl Default for Strategy {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Strategy::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// First `Some` produced by `f`, in slice order.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            Strategy::Sequential => items.iter().find_map(f),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().find_map_first(f),
        }
    }

    /// Order-preserving `filter_map`.
    pub fn filter_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            Strategy::Sequential => items.iter().filter_map(f).collect(),
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().filter_map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..10_000).collect();
        let pick = |x: &u64| (x % 977 == 500).then_some(*x);
        let seq = Strategy::Sequential.find_map_first(&xs, pick);
        assert_eq!(seq, Some(500));
        assert_eq!(Strategy::default().find_map_first(&xs, pick), seq);
        let evens = |x: &u64| x.is_multiple_of(2).then_some(x * 3);
        assert_eq!(
            Strategy::Sequential.filter_map(&xs, evens),
            Strategy::default().filter_map(&xs, evens)
        );
    }
}
