//! Process-wide memo of character tables keyed by element set.
//!
//! Class order depends only on the element set, so a table computed for one
//! generating set is valid for any other generating set of the same group.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::char_table::CharacterTable;
use crate::error::Result;
use crate::group::Group;
use crate::perm::Permutation;

#[derive(Debug)]
pub struct GroupData {
    pub group: Group,
    pub table: CharacterTable,
}

type Cache = Mutex<HashMap<Vec<Permutation>, Arc<GroupData>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn group_data(g: &Group) -> Result<Arc<GroupData>> {
    if let Some(d) = cache().lock().unwrap().get(g.elements()) {
        return Ok(d.clone());
    }
    let data = Arc::new(GroupData { group: g.clone(), table: CharacterTable::compute(g)? });
    Ok(cache().lock().unwrap().entry(g.elements().to_vec()).or_insert(data).clone())
}
