#![no_main]

use infgon::mutation::MutationOption;
use infgon_service::{CreateRequest, SessionStore};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let store = SessionStore::new();
    if let Ok(request) = serde_json::from_slice::<CreateRequest>(data) {
        if let Ok(state) = store.create(request) {
            for entry in state.arcs.iter().take(4) {
                let options = store.options(&state.id, entry.arc).expect("arc of the session");
                if let Some(&option) = options.first() {
                    store.apply(&state.id, option).expect("offered option applies");
                    store.undo(&state.id).expect("one step to undo");
                }
            }
        }
    }
    let _ = serde_json::from_slice::<MutationOption>(data);
});
