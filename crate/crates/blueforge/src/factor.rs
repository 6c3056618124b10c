use std::collections::HashMap;
use std::sync::RwLock;

use blueforge_core::rational::{Factorize, Factorizer};
use num_bigint::BigUint;

/// Memoizing wrapper around the core factorizer, shareable across threads.
#[derive(Debug, Default)]
pub struct CachedFactorizer {
    cache: RwLock<HashMap<BigUint, Vec<(BigUint, u32)>>>,
}

impl CachedFactorizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Factorize for CachedFactorizer {
    fn factorize(&self, n: &BigUint) -> Vec<(BigUint, u32)> {
        if let Some(hit) = self.cache.read().ok().and_then(|c| c.get(n).cloned()) {
            return hit;
        }
        let f = Factorizer.factorize(n);
        if let Ok(mut c) = self.cache.write() {
            c.insert(n.clone(), f.clone());
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caches() {
        let f = CachedFactorizer::new();
        let n = BigUint::from(360u32);
        let a = f.factorize(&n);
        assert_eq!(f.len(), 1);
        assert_eq!(a, f.factorize(&n));
        assert_eq!(a, vec![(2u32.into(), 3), (3u32.into(), 2), (5u32.into(), 1)]);
    }
}
