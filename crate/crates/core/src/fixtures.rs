//! Structured posets shipped with the crate (see `fixtures/`).

use crate::error::{Error, Result};
use crate::poset::{PosetDoc, StructuredPoset};
use crate::subset::MAX_WIDTH;

const BUNDLED: &[(&str, &str)] = &[
    ("chain2", include_str!("../fixtures/chain2.json")),
    ("boole4", include_str!("../fixtures/boole4.json")),
    ("boole8", include_str!("../fixtures/boole8.json")),
    ("m3", include_str!("../fixtures/m3.json")),
    ("mo2", include_str!("../fixtures/mo2.json")),
    ("o6", include_str!("../fixtures/o6.json")),
    ("fig1", include_str!("../fixtures/fig1.json")),
];

/// Names of all bundled fixtures.
pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Raw JSON text of a bundled fixture.
pub fn source(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<StructuredPoset> {
    let text = source(name).ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let doc: PosetDoc = serde_json::from_str(text)?;
    StructuredPoset::from_doc(&doc, MAX_WIDTH)
}

pub fn all() -> Vec<StructuredPoset> {
    names().map(|n| load(n).expect("bundled fixture is valid")).collect()
}
