//! Label terms and their structural fingerprints.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// 128-bit structural fingerprint.
pub type Fp = u128;

const K0: u64 = 0x9e37_79b9_7f4a_7c15;
const K1: u64 = 0xc2b2_ae3d_27d4_eb4f;
const K2: u64 = 0x1656_67b1_9e37_79f9;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sequential two-lane hasher. Output depends only on the written sequence.
#[derive(Clone, Copy, Debug)]
pub struct FpHasher {
    a: u64,
    b: u64,
}

impl FpHasher {
    pub fn new(tag: u64) -> FpHasher {
        FpHasher {
            a: mix64(tag ^ K0),
            b: mix64(tag.wrapping_add(K1)),
        }
    }

    #[inline]
    pub fn write(&mut self, x: u64) {
        self.a = mix64(self.a ^ x).wrapping_add(K2);
        self.b = mix64(self.b.rotate_left(23) ^ x.wrapping_mul(K1)).wrapping_add(K0);
    }

    #[inline]
    pub fn write_fp(&mut self, f: Fp) {
        self.write(f as u64);
        self.write((f >> 64) as u64);
    }

    pub fn finish(&self) -> Fp {
        let hi = mix64(self.a ^ self.b.rotate_left(17));
        let lo = mix64(self.b ^ self.a.wrapping_mul(K2));
        ((hi as u128) << 64) | lo as u128
    }
}

pub(crate) const TAG_INT: u64 = 1;
pub(crate) const TAG_BYTES: u64 = 2;
pub(crate) const TAG_GAP: u64 = 3;
pub(crate) const TAG_TUPLE: u64 = 4;
pub(crate) const TAG_MULTISET: u64 = 5;

/// Fingerprint of the gap symbol.
pub fn gap_fp() -> Fp {
    FpHasher::new(TAG_GAP).finish()
}

/// Fingerprint of `Tuple` with children of the given fingerprints.
pub fn tuple_fp<I: IntoIterator<Item = Fp>>(children: I) -> Fp {
    let mut h = FpHasher::new(TAG_TUPLE);
    let mut len = 0u64;
    for c in children {
        h.write_fp(c);
        len += 1;
    }
    h.write(len);
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Int(i64),
    Bytes(Vec<u8>),
}

/// A label value. The derived order ranks variants as
/// `Base < Gap < Tuple < Multiset`, then compares contents lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelTerm {
    Base(Atom),
    Gap,
    Tuple(Vec<LabelTerm>),
    /// Sorted by term, counts positive, no repeated terms.
    Multiset(Vec<(LabelTerm, u64)>),
}

impl LabelTerm {
    pub fn int(i: i64) -> LabelTerm {
        LabelTerm::Base(Atom::Int(i))
    }

    pub fn bytes(b: &[u8]) -> LabelTerm {
        LabelTerm::Base(Atom::Bytes(b.to_vec()))
    }

    pub fn tuple_of_ints<I: IntoIterator<Item = i64>>(xs: I) -> LabelTerm {
        LabelTerm::Tuple(xs.into_iter().map(LabelTerm::int).collect())
    }

    /// Builds a multiset in canonical form.
    pub fn multiset<I: IntoIterator<Item = (LabelTerm, u64)>>(items: I) -> LabelTerm {
        let mut v: Vec<(LabelTerm, u64)> = items.into_iter().filter(|(_, c)| *c > 0).collect();
        v.sort();
        let mut out: Vec<(LabelTerm, u64)> = Vec::with_capacity(v.len());
        for (t, c) in v {
            match out.last_mut() {
                Some((last, lc)) if *last == t => *lc += c,
                _ => out.push((t, c)),
            }
        }
        LabelTerm::Multiset(out)
    }

    /// Label produced from a fingerprint, ordered like the fingerprint.
    pub fn from_fp(f: Fp) -> LabelTerm {
        LabelTerm::Base(Atom::Bytes(f.to_be_bytes().to_vec()))
    }

    pub fn contains_gap(&self) -> bool {
        match self {
            LabelTerm::Base(_) => false,
            LabelTerm::Gap => true,
            LabelTerm::Tuple(xs) => xs.iter().any(|x| x.contains_gap()),
            LabelTerm::Multiset(xs) => xs.iter().any(|(x, _)| x.contains_gap()),
        }
    }

    pub fn fingerprint(&self) -> Fp {
        match self {
            LabelTerm::Base(Atom::Int(i)) => {
                let mut h = FpHasher::new(TAG_INT);
                h.write(*i as u64);
                h.finish()
            }
            LabelTerm::Base(Atom::Bytes(b)) => {
                let mut h = FpHasher::new(TAG_BYTES);
                h.write(b.len() as u64);
                for chunk in b.chunks(8) {
                    let mut buf = [0u8; 8];
                    buf[..chunk.len()].copy_from_slice(chunk);
                    h.write(u64::from_le_bytes(buf));
                }
                h.finish()
            }
            LabelTerm::Gap => gap_fp(),
            LabelTerm::Tuple(xs) => tuple_fp(xs.iter().map(|x| x.fingerprint())),
            LabelTerm::Multiset(xs) => {
                let mut h = FpHasher::new(TAG_MULTISET);
                for (x, c) in xs {
                    h.write_fp(x.fingerprint());
                    h.write(*c);
                }
                h.write(xs.len() as u64);
                h.finish()
            }
        }
    }

    /// JSON form: integers as numbers, byte strings as strings (or `{"hex": ..}`
    /// when not UTF-8), gap as `null`, tuples as arrays, multisets as
    /// `{"multiset": [[term, count], ..]}`.
    pub fn to_json(&self) -> Value {
        match self {
            LabelTerm::Base(Atom::Int(i)) => json!(i),
            LabelTerm::Base(Atom::Bytes(b)) => match std::str::from_utf8(b) {
                Ok(s) if s.chars().all(|c| !c.is_control()) => json!(s),
                _ => {
                    let hex: String = b.iter().map(|x| format!("{x:02x}")).collect();
                    json!({ "hex": hex })
                }
            },
            LabelTerm::Gap => Value::Null,
            LabelTerm::Tuple(xs) => Value::Array(xs.iter().map(|x| x.to_json()).collect()),
            LabelTerm::Multiset(xs) => json!({
                "multiset": xs.iter().map(|(x, c)| json!([x.to_json(), c])).collect::<Vec<_>>()
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<LabelTerm> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(LabelTerm::int)
                .ok_or_else(|| Error::Parse(format!("label {n} is not an integer"))),
            Value::String(s) => Ok(LabelTerm::bytes(s.as_bytes())),
            Value::Null => Ok(LabelTerm::Gap),
            Value::Array(xs) => Ok(LabelTerm::Tuple(
                xs.iter().map(LabelTerm::from_json).collect::<Result<_>>()?,
            )),
            Value::Object(map) => {
                if let Some(Value::String(hex)) = map.get("hex") {
                    if hex.len() % 2 != 0 {
                        return Err(Error::Parse("odd-length hex label".into()));
                    }
                    let bytes = (0..hex.len())
                        .step_by(2)
                        .map(|i| u8::from_str_radix(&hex[i..i + 2], 16))
                        .collect::<std::result::Result<Vec<u8>, _>>()
                        .map_err(|e| Error::Parse(e.to_string()))?;
                    return Ok(LabelTerm::Base(Atom::Bytes(bytes)));
                }
                if let Some(Value::Array(items)) = map.get("multiset") {
                    let mut out = Vec::new();
                    for item in items {
                        match item.as_array().map(|a| a.as_slice()) {
                            Some([t, c]) => {
                                let c = c
                                    .as_u64()
                                    .ok_or_else(|| Error::Parse("bad multiset count".into()))?;
                                out.push((LabelTerm::from_json(t)?, c));
                            }
                            _ => return Err(Error::Parse("bad multiset entry".into())),
                        }
                    }
                    return Ok(LabelTerm::multiset(out));
                }
                Err(Error::Parse(format!("unrecognised label object {v}")))
            }
            Value::Bool(_) => Err(Error::Parse("boolean labels are not supported".into())),
        }
    }
}

impl fmt::Display for LabelTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelTerm::Base(Atom::Int(i)) => write!(f, "{i}"),
            LabelTerm::Base(Atom::Bytes(b)) => match std::str::from_utf8(b) {
                Ok(s) => write!(f, "{s:?}"),
                Err(_) => {
                    for x in b {
                        write!(f, "{x:02x}")?;
                    }
                    Ok(())
                }
            },
            LabelTerm::Gap => write!(f, "#"),
            LabelTerm::Tuple(xs) => {
                write!(f, "(")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            LabelTerm::Multiset(xs) => {
                write!(f, "{{")?;
                for (k, (x, c)) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}^{c}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_order() {
        let base = LabelTerm::int(100);
        let gap = LabelTerm::Gap;
        let tup = LabelTerm::Tuple(vec![]);
        let ms = LabelTerm::multiset(vec![]);
        assert!(base < gap && gap < tup && tup < ms);
        assert!(LabelTerm::tuple_of_ints([1, 2]) < LabelTerm::tuple_of_ints([1, 3]));
        assert!(LabelTerm::tuple_of_ints([1]) < LabelTerm::tuple_of_ints([1, 0]));
    }

    #[test]
    fn multiset_is_canonical() {
        let a = LabelTerm::multiset(vec![(LabelTerm::int(2), 1), (LabelTerm::int(1), 2), (LabelTerm::int(2), 3)]);
        let b = LabelTerm::multiset(vec![(LabelTerm::int(1), 2), (LabelTerm::int(2), 4), (LabelTerm::int(3), 0)]);
        assert_eq!(a, b);
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn fingerprints_are_structural() {
        let t = LabelTerm::Tuple(vec![LabelTerm::int(1), LabelTerm::Gap]);
        assert_eq!(t.fingerprint(), tuple_fp([LabelTerm::int(1).fingerprint(), gap_fp()]));
        assert_ne!(LabelTerm::int(1).fingerprint(), LabelTerm::bytes(&[1]).fingerprint());
        assert_ne!(
            LabelTerm::Tuple(vec![LabelTerm::Tuple(vec![])]).fingerprint(),
            LabelTerm::Tuple(vec![]).fingerprint()
        );
        assert_ne!(LabelTerm::bytes(b"ab").fingerprint(), LabelTerm::bytes(b"ab\0").fingerprint());
    }

    #[test]
    fn json_round_trip() {
        let t = LabelTerm::Tuple(vec![
            LabelTerm::int(-3),
            LabelTerm::bytes(b"black"),
            LabelTerm::Gap,
            LabelTerm::from_fp(12345),
            LabelTerm::multiset(vec![(LabelTerm::int(1), 2)]),
        ]);
        assert_eq!(LabelTerm::from_json(&t.to_json()).unwrap(), t);
        assert!(LabelTerm::from_json(&json!(true)).is_err());
    }
}
