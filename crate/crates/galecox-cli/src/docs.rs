//! On-disk document formats.
//!
//! Everything on the wire is exact: rationals travel as `"p/q"` strings
//! (never floats), integers as JSON numbers when they fit and as strings
//! otherwise. Parsing is strict enough to reject `1/0` and ragged rows
//! with a line/column diagnostic, and `parse(serialize(x)) = x` for every
//! document this tool emits.

use galecox::condstar::WeightCollection;
use galecox::gale::{GaleError, PointConfig, VectorConfig};
use galecox::lattice::{FgAbelianGroup, IntMatrix};
use galecox::rational::{format_rational, parse_rational, Int, Rational};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar: `"p/q"` or `"p"` on the wire; bare JSON integers
/// are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Rational);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an exact rational as a \"p/q\" string or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Rat, E> {
                parse_rational(v).map(Rat).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(Int::from(v))))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Rational::from_integer(Int::from(v))))
            }
            fn visit_f64<E: serde::de::Error>(self, _: f64) -> Result<Rat, E> {
                Err(E::custom("floating point is not accepted; use \"p/q\""))
            }
        }
        d.deserialize_any(V)
    }
}

/// Exact integer scalar: JSON number when it fits in 64 bits, decimal
/// string otherwise; both accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntScalar(pub Int);

impl Serialize for IntScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for IntScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = IntScalar;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer, as a number or a decimal string")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<IntScalar, E> {
                v.trim()
                    .parse::<Int>()
                    .map(IntScalar)
                    .map_err(|_| E::custom(format!("invalid integer `{v}`")))
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<IntScalar, E> {
                Ok(IntScalar(Int::from(v)))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<IntScalar, E> {
                Ok(IntScalar(Int::from(v)))
            }
            fn visit_f64<E: serde::de::Error>(self, _: f64) -> Result<IntScalar, E> {
                Err(E::custom("floating point is not accepted; use an integer"))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigKind {
    Points,
    Vectors,
}

/// A point or vector configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDocument {
    pub kind: ConfigKind,
    pub dim: usize,
    pub rows: Vec<Vec<Rat>>,
}

impl ConfigDocument {
    pub fn from_vectors(g: &VectorConfig) -> Self {
        ConfigDocument {
            kind: ConfigKind::Vectors,
            dim: g.dim(),
            rows: g
                .vectors()
                .iter()
                .map(|v| v.iter().cloned().map(Rat).collect())
                .collect(),
        }
    }

    fn raw_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.0.clone()).collect())
            .collect()
    }

    pub fn to_points(&self) -> Result<PointConfig, GaleError> {
        PointConfig::new(self.dim, self.raw_rows())
    }

    pub fn to_vectors(&self) -> Result<VectorConfig, GaleError> {
        VectorConfig::new(self.dim, self.raw_rows())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<IntScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    #[serde(default)]
    pub free: Vec<IntScalar>,
    #[serde(default)]
    pub torsion: Vec<IntScalar>,
    pub mult: usize,
}

/// Optional module metadata carried alongside a weight system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleInfo {
    Case { case: String },
    Summands { n: usize, summands: Vec<String> },
}

/// A weight system: a finitely generated abelian group and a multiset of
/// weights over it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystemDocument {
    pub group: GroupDocument,
    pub weights: Vec<WeightEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleInfo>,
}

impl WeightSystemDocument {
    pub fn from_collection(w: &WeightCollection, module: Option<ModuleInfo>) -> Self {
        WeightSystemDocument {
            group: GroupDocument {
                free_rank: w.group().free_rank(),
                torsion: w.group().torsion().iter().cloned().map(IntScalar).collect(),
            },
            weights: w
                .weights()
                .iter()
                .map(|(e, m)| WeightEntry {
                    free: e.free_part().iter().cloned().map(IntScalar).collect(),
                    torsion: e.torsion_part().iter().cloned().map(IntScalar).collect(),
                    mult: *m,
                })
                .collect(),
            module,
        }
    }

    /// Builds the collection; torsion lists that are not invariant-factor
    /// chains are canonicalized, transporting the residues along.
    pub fn to_collection(&self) -> Result<WeightCollection, String> {
        let moduli: Vec<Int> = self.group.torsion.iter().map(|x| x.0.clone()).collect();
        if let Some(bad) = moduli.iter().find(|q| !q.is_positive()) {
            return Err(format!("torsion modulus {bad} is not positive"));
        }
        let chain_already = moduli
            .iter()
            .enumerate()
            .all(|(i, q)| *q >= Int::from(2) && (i == 0 || (q % &moduli[i - 1]).is_zero()));
        let (group, map) = if chain_already {
            (
                FgAbelianGroup::new(self.group.free_rank, moduli.clone())
                    .map_err(|e| e.to_string())?,
                None,
            )
        } else {
            let (g, m) = FgAbelianGroup::canonicalized(self.group.free_rank, &moduli)
                .map_err(|e| e.to_string())?;
            (g, Some(m))
        };
        let mut weights = Vec::with_capacity(self.weights.len());
        for (i, entry) in self.weights.iter().enumerate() {
            let free: Vec<Int> = entry.free.iter().map(|x| x.0.clone()).collect();
            let torsion: Vec<Int> = entry.torsion.iter().map(|x| x.0.clone()).collect();
            if torsion.len() != moduli.len() {
                return Err(format!(
                    "weight {i} has {} torsion residues, the group lists {} moduli",
                    torsion.len(),
                    moduli.len()
                ));
            }
            let torsion = match &map {
                Some(m) => m.map(&torsion),
                None => torsion,
            };
            let e = group.element(free, torsion).map_err(|e| e.to_string())?;
            weights.push((e, entry.mult));
        }
        WeightCollection::new(group, weights).map_err(|e| e.to_string())
    }
}

/// An integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub entries: Vec<Vec<IntScalar>>,
}

impl MatrixDocument {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        MatrixDocument {
            entries: (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| IntScalar(m.at(i, j).clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix, String> {
        let rows = self.entries.len();
        let cols = self.entries.first().map_or(0, |r| r.len());
        for (i, r) in self.entries.iter().enumerate() {
            if r.len() != cols {
                return Err(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                ));
            }
        }
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, r) in self.entries.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.0.clone());
            }
        }
        Ok(m)
    }
}

/// Output of the Smith normal form command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDocument {
    pub d: MatrixDocument,
    pub u: MatrixDocument,
    pub v: MatrixDocument,
}

#[cfg(test)]
mod tests {
    use super::*;
    use galecox::rational::{int, rat};

    #[test]
    fn config_document_round_trip() {
        let g = VectorConfig::from_i64(1, &[&[1], &[-1], &[1], &[-1]]).unwrap();
        let doc = ConfigDocument::from_vectors(&g);
        let json = serde_json::to_string(&doc).unwrap();
        let back: ConfigDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        assert_eq!(back.to_vectors().unwrap(), g);

        let a = PointConfig::from_i64(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap();
        let doc: ConfigDocument = serde_json::from_str(
            r#"{"kind":"points","dim":2,"rows":[["0","0"],["1","0"],["1","1"],["0","1"]]}"#,
        )
        .unwrap();
        assert_eq!(doc.to_points().unwrap(), a);
    }

    #[test]
    fn rationals_on_the_wire_are_strings() {
        let doc = ConfigDocument {
            kind: ConfigKind::Points,
            dim: 1,
            rows: vec![vec![Rat(galecox::rational::ratio(1, 2))]],
        };
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.contains("\"1/2\""));
        // integer input accepted, floats rejected
        let ok: ConfigDocument = serde_json::from_str(
            r#"{"kind":"points","dim":1,"rows":[[3]]}"#,
        )
        .unwrap();
        assert_eq!(ok.rows[0][0].0, rat(3));
        let err = serde_json::from_str::<ConfigDocument>(
            r#"{"kind":"points","dim":1,"rows":[[0.5]]}"#,
        );
        assert!(err.is_err());
    }

    #[test]
    fn zero_denominator_rejected_with_position() {
        let err = serde_json::from_str::<ConfigDocument>(
            "{\"kind\":\"points\",\"dim\":1,\n \"rows\":[[\"1/0\"]]}",
        )
        .unwrap_err();
        assert!(err.to_string().contains("denominator is zero"));
        assert_eq!(err.line(), 2);
        assert!(err.column() > 0);
    }

    #[test]
    fn weight_system_round_trip_with_torsion() {
        let group = FgAbelianGroup::new(1, vec![int(2)]).unwrap();
        let w = WeightCollection::new(
            group.clone(),
            vec![
                (group.element_i64(&[1], &[0]).unwrap(), 3),
                (group.element_i64(&[-1], &[1]).unwrap(), 3),
                (group.element_i64(&[0], &[1]).unwrap(), 1),
            ],
        )
        .unwrap();
        let doc = WeightSystemDocument::from_collection(&w, None);
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: WeightSystemDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
        assert_eq!(back.to_collection().unwrap(), w);
    }

    #[test]
    fn non_chain_torsion_is_canonicalized() {
        let doc: WeightSystemDocument = serde_json::from_str(
            r#"{"group":{"free_rank":0,"torsion":[2,3]},
                "weights":[{"free":[],"torsion":[1,1],"mult":1}]}"#,
        )
        .unwrap();
        let w = doc.to_collection().unwrap();
        assert_eq!(w.group().free_rank(), 0);
        assert_eq!(w.group().torsion(), &[int(6)]);
        // (1 mod 2, 1 mod 3) generates Z/6
        let (e, _) = &w.weights()[0];
        assert!(galecox::lattice::generates(w.group(), &[e.clone()]).unwrap());
    }

    #[test]
    fn matrix_document_rejects_ragged_rows() {
        let doc: MatrixDocument =
            serde_json::from_str(r#"{"entries":[[1,2],[3]]}"#).unwrap();
        assert!(doc.to_matrix().is_err());
    }

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&IntScalar(big.clone())).unwrap();
        assert_eq!(s, "\"123456789012345678901234567890\"");
        let back: IntScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, big);
    }
}
