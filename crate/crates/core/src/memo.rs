// Copyright 2026 The spinpoly Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

/// Process-wide memo table of immutable values.
///
/// Two threads racing on the same key may both compute; the first insert
/// wins and both observe the same `Arc`.
pub(crate) struct Memo<K, V> {
    table: OnceLock<RwLock<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Self { table: OnceLock::new() }
    }

    pub(crate) fn get_or_compute(&self, key: K, compute: impl FnOnce() -> V) -> Arc<V> {
        let table = self.table.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(v) = table.read().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Arc::clone(v);
        }
        let value = Arc::new(compute());
        let mut guard = table.write().unwrap_or_else(|e| e.into_inner());
        Arc::clone(guard.entry(key).or_insert(value))
    }
}
