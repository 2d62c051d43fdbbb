use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::Word;

use super::Automorphism;

/// Wire form `{"rank": n, "images": [...], "inverse_images": [...]}` with
/// words in the text grammar. `inverse_images` may be omitted only for maps
/// that square to the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismJson {
    pub rank: usize,
    pub images: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_images: Option<Vec<String>>,
}

impl AutomorphismJson {
    pub fn to_automorphism(&self) -> Result<Automorphism> {
        let parse = |v: &[String]| -> Result<Vec<Word>> {
            if v.len() != self.rank {
                return Err(Error::RankMismatch {
                    expected: self.rank,
                    found: v.len(),
                });
            }
            v.iter().map(|s| Word::parse(s, self.rank)).collect()
        };
        let images = parse(&self.images)?;
        match &self.inverse_images {
            Some(inv) => Automorphism::new(images, parse(inv)?),
            None => Automorphism::from_involution(images).map_err(|e| match e {
                Error::NotInverse(_) => Error::NotInverse(
                    "inverse_images omitted but the map is not an involution".into(),
                ),
                other => other,
            }),
        }
    }
}

impl From<&Automorphism> for AutomorphismJson {
    fn from(a: &Automorphism) -> Self {
        AutomorphismJson {
            rank: a.rank(),
            images: a.images().iter().map(Word::to_string).collect(),
            inverse_images: Some(a.backward().images().iter().map(Word::to_string).collect()),
        }
    }
}

impl Automorphism {
    pub fn from_json(text: &str) -> Result<Automorphism> {
        let parsed: AutomorphismJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        parsed.to_automorphism()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AutomorphismJson::from(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_may_omit_inverse() {
        let a = Automorphism::from_json(r#"{"rank": 2, "images": ["X1", "x1 x2 X1"]}"#).unwrap();
        assert!(a.is_involution());
        let e = Automorphism::from_json(r#"{"rank": 2, "images": ["x1", "x1 x2"]}"#);
        assert!(matches!(e, Err(Error::NotInverse(_))));
    }

    #[test]
    fn explicit_inverse_round_trip() {
        let text = r#"{"rank":2,"images":["x1","x1 x2"],"inverse_images":["x1","X1 x2"]}"#;
        let a = Automorphism::from_json(text).unwrap();
        assert_eq!(a.to_json(), text);
        assert!(matches!(
            Automorphism::from_json(r#"{"rank": 2, "images": ["x1"]}"#),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(Automorphism::from_json("{"), Err(Error::Json(_))));
    }
}
