//! Interned transition labels.
//!
//! Every label lives in a process-wide pool so that automata and logs built
//! independently compare their alphabets by integer id. Two ids are reserved:
//! the silent marker and the short-circuit marker. Neither can be produced by
//! interning a name, so a user label spelled `"tau"` or `"χ"` is an ordinary
//! label.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Name reserved for the short-circuit marker in external documents.
pub const CHI_NAME: &str = "__chi__";

/// An interned symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u32);

struct Pool {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn pool() -> &'static RwLock<Pool> {
    static POOL: OnceLock<RwLock<Pool>> = OnceLock::new();
    POOL.get_or_init(|| {
        RwLock::new(Pool {
            names: vec!["τ", "χ"],
            ids: HashMap::new(),
        })
    })
}

impl Label {
    /// The silent label. Projected away when defining languages.
    pub const TAU: Label = Label(0);
    /// The short-circuit label placed on accept-to-start edges.
    pub const CHI: Label = Label(1);

    /// Interns `name`, returning the same label for equal names.
    pub fn intern(name: &str) -> Label {
        if let Some(&id) = pool().read().expect("label pool poisoned").ids.get(name) {
            return Label(id);
        }
        let mut pool = pool().write().expect("label pool poisoned");
        if let Some(&id) = pool.ids.get(name) {
            return Label(id);
        }
        let id = u32::try_from(pool.names.len()).expect("label pool exhausted");
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        pool.names.push(leaked);
        pool.ids.insert(leaked, id);
        Label(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// Display name; `τ` and `χ` for the reserved markers.
    pub fn name(self) -> &'static str {
        pool().read().expect("label pool poisoned").names[self.0 as usize]
    }

    pub fn is_reserved(self) -> bool {
        self == Label::TAU || self == Label::CHI
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Interns every character of `word` as a one-letter label.
pub fn word(word: &str) -> Vec<Label> {
    word.chars()
        .map(|c| Label::intern(c.encode_utf8(&mut [0; 4])))
        .collect()
}
