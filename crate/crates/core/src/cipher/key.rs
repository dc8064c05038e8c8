use serde::{Deserialize, Serialize};

use crate::chaos::{Case, CombinedMapSpec};
use crate::error::{Error, Result};

/// Map used by a key: a named preset or an inline parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KeyMap {
    Preset(Case),
    Custom(CombinedMapSpec),
}

impl KeyMap {
    pub fn spec(&self) -> CombinedMapSpec {
        match self {
            KeyMap::Preset(c) => c.spec(),
            KeyMap::Custom(s) => *s,
        }
    }
}

impl From<Case> for KeyMap {
    fn from(c: Case) -> Self {
        KeyMap::Preset(c)
    }
}

/// The five control parameters `r₀..r₄` and the map they drive.
///
/// JSON form: `{"case": "ii", "r": [2, 1, 2, 3.5, 1.75]}`, where `case` may
/// also be an inline [`CombinedMapSpec`] object.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KeyFile", into = "KeyFile")]
pub struct SecretKey {
    r: [f64; 5],
    map: KeyMap,
}

#[derive(Serialize, Deserialize)]
struct KeyFile {
    case: KeyMap,
    r: [f64; 5],
}

impl TryFrom<KeyFile> for SecretKey {
    type Error = Error;

    fn try_from(f: KeyFile) -> Result<Self> {
        SecretKey::new(f.r, f.case)
    }
}

impl From<SecretKey> for KeyFile {
    fn from(k: SecretKey) -> Self {
        KeyFile { case: k.map, r: k.r }
    }
}

impl SecretKey {
    pub fn new(r: [f64; 5], map: impl Into<KeyMap>) -> Result<Self> {
        if let Some((i, v)) = r.iter().enumerate().find(|(_, v)| !(**v > 0.0 && **v <= 4.0)) {
            return Err(Error::InvalidKey(format!("r{i} = {v} is outside (0, 4]")));
        }
        Ok(SecretKey { r, map: map.into() })
    }

    /// `(r₀, ..., r₄) = (2, 1, 2, 3.5, 1.75)` with the Case (ii) map.
    pub fn reference() -> Self {
        SecretKey::new([2.0, 1.0, 2.0, 3.5, 1.75], Case::II).expect("valid constants")
    }

    pub fn r(&self) -> &[f64; 5] {
        &self.r
    }

    pub fn map(&self) -> KeyMap {
        self.map
    }

    pub fn spec(&self) -> CombinedMapSpec {
        self.map.spec()
    }

    pub fn with_map(self, map: impl Into<KeyMap>) -> Self {
        SecretKey { map: map.into(), ..self }
    }

    /// Copy with `r[index] += delta`.
    pub fn perturbed(&self, index: usize, delta: f64) -> Result<Self> {
        if index >= 5 {
            return Err(Error::InvalidKey(format!("no parameter r{index}")));
        }
        let mut r = self.r;
        r[index] += delta;
        SecretKey::new(r, self.map)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("key file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("keys always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_preset_key() {
        let k = SecretKey::from_json(r#"{"case": "ii", "r": [2, 1, 2, 3.5, 1.75]}"#).unwrap();
        assert_eq!(k, SecretKey::reference());
    }

    #[test]
    fn parses_inline_spec() {
        let spec = serde_json::to_string(&Case::III.spec()).unwrap();
        let text = format!(r#"{{"case": {spec}, "r": [1, 1, 1, 1, 1]}}"#);
        let k = SecretKey::from_json(&text).unwrap();
        assert_eq!(k.spec(), Case::III.spec());
        assert!(matches!(k.map(), KeyMap::Custom(_)));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(SecretKey::from_json(r#"{"case": "i", "r": [0, 1, 2, 3, 4]}"#).is_err());
        assert!(SecretKey::from_json(r#"{"case": "i", "r": [1, 1, 2, 3, 4.000001]}"#).is_err());
        assert!(SecretKey::from_json(r#"{"case": "iv", "r": [1, 1, 2, 3, 4]}"#).is_err());
        assert!(SecretKey::from_json(r#"{"case": "i", "r": [1, 1, 2, 3]}"#).is_err());
        assert!(SecretKey::reference().perturbed(4, 3.0).is_err());
    }

    proptest! {
        #[test]
        fn json_is_lossless(r in proptest::array::uniform5(1e-12f64..=4.0)) {
            let k = SecretKey::new(r, Case::I).unwrap();
            let back = SecretKey::from_json(&k.to_json()).unwrap();
            prop_assert!(back.r().iter().zip(k.r()).all(|(a, b)| a.to_bits() == b.to_bits()));
        }
    }
}
