//! Fault injection for mutation smoke tests.

use std::sync::atomic::{AtomicBool, Ordering};

static PURITY_MUTATION: AtomicBool = AtomicBool::new(false);

/// While set, every purity check answers "pure".
pub fn set_purity_mutation(on: bool) {
    PURITY_MUTATION.store(on, Ordering::SeqCst);
}

pub fn purity_mutation() -> bool {
    PURITY_MUTATION.load(Ordering::Relaxed)
}
