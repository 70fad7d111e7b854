//! JSON encodings for the machine-readable interfaces.
//!
//! Matrices are `{"field": "Q"|"Fp", "p": …, "rows": n, "cols": m,
//! "entries": [[…row strings…]]}` with rationals rendered as `"a/b"`.
//! Compound objects reference their knot by name and/or pd code and are
//! re-validated on deserialization.

use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::augment::Augmentation;
use crate::diagram::{KnotRef, WirtingerPresentation};
use crate::exactalg::{Field, Matrix, Scalar};
use crate::reps::{RepClass, Representation};
use crate::sheaf::{SheafClass, SheafData, SheafKind};
use crate::variety::{EnumerationReport, PointEntry};
use crate::words::GroupWord;

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (field, p) = match self.field() {
            Field::Rational => ("Q", None),
            Field::Prime(p) => ("Fp", Some(p)),
        };
        let entries = (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        MatrixDto {
            field: field.to_owned(),
            p,
            rows: self.rows(),
            cols: self.cols(),
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Matrix, D::Error> {
        let dto = MatrixDto::deserialize(deserializer)?;
        let field = match (dto.field.as_str(), dto.p) {
            ("Q", None) => Field::Rational,
            ("Fp", Some(p)) => Field::prime(p).map_err(DeError::custom)?,
            _ => return Err(DeError::custom("field must be \"Q\" or \"Fp\" with p set")),
        };
        if dto.entries.len() != dto.rows {
            return Err(DeError::custom("row count mismatch"));
        }
        let mut entries = Vec::with_capacity(dto.rows * dto.cols);
        for row in &dto.entries {
            if row.len() != dto.cols {
                return Err(DeError::custom("column count mismatch"));
            }
            for text in row {
                entries.push(Scalar::parse(field, text).map_err(DeError::custom)?);
            }
        }
        Ok(Matrix::new(field, dto.rows, dto.cols, entries))
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentationDto {
    knot: KnotRef,
    images: Vec<Matrix>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RepresentationDto {
            knot: self.presentation().source.clone(),
            images: self.images().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Representation, D::Error> {
        let dto = RepresentationDto::deserialize(deserializer)?;
        let pres = dto.knot.presentation().map_err(DeError::custom)?;
        Representation::new(pres, dto.images).map_err(DeError::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SheafDto {
    complement_rep: Representation,
    knot_monodromy: Matrix,
    #[serde(rename = "T")]
    transform: Matrix,
}

impl Serialize for SheafData {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SheafDto {
            complement_rep: self.complement_rep().clone(),
            knot_monodromy: self.knot_monodromy().clone(),
            transform: self.transform().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SheafData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<SheafData, D::Error> {
        let dto = SheafDto::deserialize(deserializer)?;
        SheafData::new(dto.complement_rep, dto.knot_monodromy, dto.transform)
            .map_err(DeError::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct AugmentationDto {
    knot: KnotRef,
    mu: String,
    lambda: String,
    #[serde(rename = "R")]
    r: Matrix,
}

impl Serialize for Augmentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        AugmentationDto {
            knot: self.presentation().source.clone(),
            mu: self.mu().to_string(),
            lambda: self.lambda().to_string(),
            r: self.r().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Augmentation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Augmentation, D::Error> {
        let dto = AugmentationDto::deserialize(deserializer)?;
        let pres = dto.knot.presentation().map_err(DeError::custom)?;
        let field = dto.r.field();
        let mu = Scalar::parse(field, &dto.mu).map_err(DeError::custom)?;
        let lambda = Scalar::parse(field, &dto.lambda).map_err(DeError::custom)?;
        Augmentation::new(pres, mu, lambda, dto.r).map_err(DeError::custom)
    }
}

impl Serialize for WirtingerPresentation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct RelationDto {
            lhs: String,
            rhs: String,
        }
        let mut s = serializer.serialize_struct("WirtingerPresentation", 6)?;
        s.serialize_field("knot", &self.source)?;
        s.serialize_field("n_generators", &self.n_generators)?;
        let relations: Vec<RelationDto> = self
            .relations
            .iter()
            .map(|r| RelationDto {
                lhs: r.lhs.to_string(),
                rhs: r.rhs.to_string(),
            })
            .collect();
        s.serialize_field("relations", &relations)?;
        let conjugators: Vec<String> = self.conjugators.iter().map(GroupWord::to_string).collect();
        s.serialize_field("conjugators", &conjugators)?;
        s.serialize_field("longitude", &self.longitude.to_string())?;
        s.serialize_field("writhe", &self.writhe)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for WirtingerPresentation {
    fn deserialize<D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<WirtingerPresentation, D::Error> {
        // the knot reference is authoritative; everything else is derived
        #[derive(Deserialize)]
        struct Dto {
            knot: KnotRef,
        }
        let dto = Dto::deserialize(deserializer)?;
        let pres = dto.knot.presentation().map_err(DeError::custom)?;
        Ok(pres.as_ref().clone())
    }
}

impl Serialize for RepClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = match self {
            RepClass::Kch { .. } => 3,
            RepClass::UnipotentKch { .. } => 2,
            _ => 1,
        };
        let mut s = serializer.serialize_struct("RepClass", n)?;
        s.serialize_field("family", self.family())?;
        if let RepClass::Kch { mu0, .. } = self {
            s.serialize_field("mu0", &mu0.to_string())?;
        }
        if let Some(irr) = self.irreducible() {
            s.serialize_field("irreducible", &irr)?;
        }
        s.end()
    }
}

impl Serialize for SheafClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Certificate<'a> {
            Rep {
                rep: &'a Representation,
            },
            Skyscraper {
                alpha: String,
                local_rank: usize,
            },
            Local {
                local_rank: usize,
            },
            Extension {
                local_rank: usize,
                extension_vector: Vec<String>,
            },
        }
        let certificate = match &self.kind {
            SheafKind::KchPushforward { rep } | SheafKind::UnipotentPushforward { rep } => {
                Certificate::Rep { rep }
            }
            SheafKind::Skyscraper { alpha, local_rank } => Certificate::Skyscraper {
                alpha: alpha.to_string(),
                local_rank: *local_rank,
            },
            SheafKind::ZeroExtensionConstant { local_rank } => Certificate::Local {
                local_rank: *local_rank,
            },
            SheafKind::KnotExtension {
                local_rank,
                extension_vector,
            } => Certificate::Extension {
                local_rank: *local_rank,
                extension_vector: extension_vector.iter().map(Scalar::to_string).collect(),
            },
        };
        let mut s = serializer.serialize_struct("SheafClass", 2)?;
        s.serialize_field("tag", self.kind.tag())?;
        s.serialize_field("certificate", &certificate)?;
        s.end()
    }
}

impl Serialize for PointEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PointEntry", 3)?;
        s.serialize_field("lambda", &self.point.lambda.to_string())?;
        s.serialize_field("mu", &self.point.mu.to_string())?;
        s.serialize_field("multiplicity", &self.multiplicity)?;
        s.end()
    }
}

impl Serialize for EnumerationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EnumerationReport", 6)?;
        s.serialize_field("knot", &self.knot)?;
        s.serialize_field("prime", &self.prime)?;
        s.serialize_field("augmentation_count", &self.augmentation_count)?;
        s.serialize_field("points", &self.points)?;
        s.serialize_field("candidates", &self.candidates)?;
        s.serialize_field("wall_ms", &self.wall_ms)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for EnumerationReport {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<EnumerationReport, D::Error> {
        #[derive(Deserialize)]
        struct PointDto {
            lambda: String,
            mu: String,
            multiplicity: u64,
        }
        #[derive(Deserialize)]
        struct Dto {
            knot: KnotRef,
            prime: u32,
            augmentation_count: u64,
            points: Vec<PointDto>,
            candidates: u64,
            wall_ms: u64,
        }
        let dto = Dto::deserialize(deserializer)?;
        let field = Field::prime(dto.prime).map_err(DeError::custom)?;
        let points = dto
            .points
            .into_iter()
            .map(|p| {
                Ok(PointEntry {
                    point: crate::variety::AugPoint {
                        lambda: Scalar::parse(field, &p.lambda).map_err(DeError::custom)?,
                        mu: Scalar::parse(field, &p.mu).map_err(DeError::custom)?,
                    },
                    multiplicity: p.multiplicity,
                })
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Ok(EnumerationReport {
            knot: dto.knot,
            prime: dto.prime,
            augmentation_count: dto.augmentation_count,
            points,
            candidates: dto.candidates,
            wall_ms: dto.wall_ms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::pushforward;

    fn trefoil_rep() -> Representation {
        let pres = KnotRef::named("trefoil").presentation().unwrap();
        let f = Field::Rational;
        Representation::new(
            pres,
            vec![
                Matrix::from_i64_rows(f, &[&[1, 1], &[0, 1]]),
                Matrix::from_i64_rows(f, &[&[1, 0], &[-1, 1]]),
                Matrix::from_i64_rows(f, &[&[2, 1], &[-1, 0]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn matrix_round_trip() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[1, 2, 3], &[4, 0, 1]]);
        let text = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);

        let q = Matrix::from_i64_rows(Field::Rational, &[&[1, -2], &[0, 7]]);
        let text = serde_json::to_string(&q).unwrap();
        assert!(text.contains("\"field\":\"Q\""));
        let back: Matrix = serde_json::from_str(&text).unwrap();
        assert_eq!(q, back);
    }

    #[test]
    fn rational_entries_parse() {
        let text = r#"{"field":"Q","rows":1,"cols":2,"entries":[["1/2","-3/4"]]}"#;
        let m: Matrix = serde_json::from_str(text).unwrap();
        assert_eq!(m[(0, 0)], Scalar::parse(Field::Rational, "1/2").unwrap());
        let round = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&round).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn representation_round_trip() {
        let rep = trefoil_rep();
        let text = serde_json::to_string(&rep).unwrap();
        let back: Representation = serde_json::from_str(&text).unwrap();
        assert_eq!(rep, back);
    }

    #[test]
    fn sheaf_and_augmentation_round_trip() {
        let s = pushforward(&trefoil_rep());
        let text = serde_json::to_string(&s).unwrap();
        let back: SheafData = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);

        let aug = crate::augment::from_sheaf(&s).unwrap();
        let text = serde_json::to_string(&aug).unwrap();
        let back: Augmentation = serde_json::from_str(&text).unwrap();
        assert_eq!(aug, back);
    }

    #[test]
    fn presentation_round_trip() {
        let pres = KnotRef::named("trefoil").presentation().unwrap();
        let text = serde_json::to_string(pres.as_ref()).unwrap();
        let back: WirtingerPresentation = serde_json::from_str(&text).unwrap();
        assert_eq!(*pres, back);
    }

    #[test]
    fn invalid_inputs_rejected() {
        // broken relation: identity image on a crossing-bearing knot
        let pres_text = r#"{
            "knot": {"name": "trefoil"},
            "images": [
                {"field":"Q","rows":1,"cols":1,"entries":[["1"]]},
                {"field":"Q","rows":1,"cols":1,"entries":[["1"]]}
            ]
        }"#;
        assert!(serde_json::from_str::<Representation>(pres_text).is_err());

        let bad_matrix = r#"{"field":"Fp","p":6,"rows":1,"cols":1,"entries":[["1"]]}"#;
        assert!(serde_json::from_str::<Matrix>(bad_matrix).is_err());
    }
}
