use std::collections::HashMap;
use std::hash::Hash;
use std::sync::RwLock;

/// Thread-safe memo table. Values are computed outside the lock, so a
/// computation may recurse into the same table; two threads racing on one key
/// both compute it and the first insertion wins.
pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, V>>,
}

impl<K: Hash + Eq, V: Clone> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_insert_with(&self, key: K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.map.read().expect("memo lock poisoned").get(&key) {
            return v.clone();
        }
        let v = f();
        self.map
            .write()
            .expect("memo lock poisoned")
            .entry(key)
            .or_insert(v)
            .clone()
    }
}
