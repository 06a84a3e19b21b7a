//! Structured ring constructors and their JSON interchange format.
//!
//! Indexing conventions are fixed so that every implementation reading the
//! same spec produces the same tables:
//!
//! * `zn`: element `i` is the residue `i`.
//! * `product`: mixed radix over the factors, left factor most significant.
//! * `matrix`: the `k*k` entries read row-major form a base-`m` digit string,
//!   entry `(0,0)` most significant.
//! * `triangular`: the same over the on-and-above-diagonal entries only.
//! * `opposite`: indexing of the base ring.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RingError};
use crate::ring::FiniteRing;

pub const DEFAULT_ORDER_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingSpec {
    Zn {
        n: usize,
    },
    Product {
        factors: Vec<RingSpec>,
    },
    Matrix {
        base: Box<RingSpec>,
        k: usize,
    },
    Triangular {
        base: Box<RingSpec>,
        k: usize,
    },
    Opposite {
        base: Box<RingSpec>,
    },
    Table {
        order: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
        label: String,
    },
}

impl RingSpec {
    pub fn zn(n: usize) -> Self {
        RingSpec::Zn { n }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product { factors }
    }

    pub fn matrix(base: RingSpec, k: usize) -> Self {
        RingSpec::Matrix { base: Box::new(base), k }
    }

    pub fn triangular(base: RingSpec, k: usize) -> Self {
        RingSpec::Triangular { base: Box::new(base), k }
    }

    pub fn opposite(base: RingSpec) -> Self {
        RingSpec::Opposite { base: Box::new(base) }
    }

    /// Table literal reproducing `ring` exactly.
    pub fn table_of(ring: &FiniteRing) -> Self {
        RingSpec::Table {
            order: ring.order(),
            add: ring.add_rows(),
            mul: ring.mul_rows(),
            zero: ring.zero(),
            one: ring.one(),
            label: ring.label().to_string(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| RingError::MalformedSpec(e.to_string()))
    }

    /// Compact single-line document, the bit-exact interchange form.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ring specs always serialize")
    }

    /// Order of the ring this spec describes, without building it.
    pub fn order(&self) -> Result<u128> {
        let overflow = || RingError::MalformedSpec("ring order overflows".into());
        match self {
            RingSpec::Zn { n } => {
                if *n == 0 {
                    return Err(RingError::MalformedSpec("zn requires n >= 1".into()));
                }
                Ok(*n as u128)
            }
            RingSpec::Product { factors } => {
                if factors.len() < 2 {
                    return Err(RingError::MalformedSpec(
                        "product requires at least 2 factors".into(),
                    ));
                }
                factors.iter().try_fold(1u128, |acc, f| acc.checked_mul(f.order()?).ok_or_else(overflow))
            }
            RingSpec::Matrix { base, k } => {
                let cells = check_dim(*k, "matrix")?.checked_mul(*k).ok_or_else(overflow)?;
                checked_pow(base.order()?, cells).ok_or_else(overflow)
            }
            RingSpec::Triangular { base, k } => {
                let cells = check_dim(*k, "triangular")? * (k + 1) / 2;
                checked_pow(base.order()?, cells).ok_or_else(overflow)
            }
            RingSpec::Opposite { base } => base.order(),
            RingSpec::Table { order, .. } => Ok(*order as u128),
        }
    }
}

fn check_dim(k: usize, kind: &str) -> Result<usize> {
    if k == 0 {
        Err(RingError::MalformedSpec(format!("{kind} requires k >= 1")))
    } else {
        Ok(k)
    }
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

/// Builds the ring described by `spec` under the default order cap.
pub fn construct(spec: &RingSpec) -> Result<FiniteRing> {
    construct_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn construct_with_cap(spec: &RingSpec, cap: usize) -> Result<FiniteRing> {
    let order = spec.order()?;
    if order > cap as u128 {
        return Err(RingError::OrderCapExceeded { order, cap });
    }
    build(spec, cap)
}

fn build(spec: &RingSpec, cap: usize) -> Result<FiniteRing> {
    match spec {
        RingSpec::Zn { n } => Ok(zn(*n)),
        RingSpec::Product { factors } => {
            let rings = factors.iter().map(|f| build(f, cap)).collect::<Result<Vec<_>>>()?;
            Ok(product(&rings))
        }
        RingSpec::Matrix { base, k } => Ok(matrix_like(&build(base, cap)?, *k, false)),
        RingSpec::Triangular { base, k } => Ok(matrix_like(&build(base, cap)?, *k, true)),
        RingSpec::Opposite { base } => Ok(build(base, cap)?.opposite()),
        RingSpec::Table { order, add, mul, zero, one, label } => {
            FiniteRing::from_tables(*order, add, mul, *zero, *one, label.clone())
        }
    }
}

fn zn(n: usize) -> FiniteRing {
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(((a + b) % n) as u32);
            mul.push(((a * b) % n) as u32);
        }
    }
    FiniteRing::from_flat(n, add, mul, 0, 1 % n, format!("Z/{n}"))
}

fn product(rings: &[FiniteRing]) -> FiniteRing {
    let radices: Vec<usize> = rings.iter().map(FiniteRing::order).collect();
    let n: usize = radices.iter().product();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| decode(i, &radices)).collect();
    let combine = |a: usize, b: usize, op: fn(&FiniteRing, usize, usize) -> usize| {
        let da = &digits[a];
        let db = &digits[b];
        encode(rings.iter().enumerate().map(|(f, r)| op(r, da[f], db[f])), &radices)
    };
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(combine(a, b, FiniteRing::add) as u32);
            mul.push(combine(a, b, FiniteRing::mul) as u32);
        }
    }
    let zero = encode(rings.iter().map(FiniteRing::zero), &radices);
    let one = encode(rings.iter().map(FiniteRing::one), &radices);
    let label = rings.iter().map(|r| wrap(r.label())).collect::<Vec<_>>().join(" x ");
    FiniteRing::from_flat(n, add, mul, zero, one, label)
}

/// `k x k` full or upper-triangular matrices over `base`.
fn matrix_like(base: &FiniteRing, k: usize, upper_only: bool) -> FiniteRing {
    let cells: Vec<(usize, usize)> = (0..k)
        .flat_map(|r| (0..k).map(move |c| (r, c)))
        .filter(|&(r, c)| !upper_only || c >= r)
        .collect();
    let mut slot = vec![None; k * k];
    for (i, &(r, c)) in cells.iter().enumerate() {
        slot[r * k + c] = Some(i);
    }
    let radices = vec![base.order(); cells.len()];
    let n: usize = radices.iter().product();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| decode(i, &radices)).collect();
    let entry = |d: &[usize], r: usize, c: usize| slot[r * k + c].map_or(base.zero(), |i| d[i]);

    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let da = &digits[a];
        for b in 0..n {
            let db = &digits[b];
            add.push(encode(cells.iter().map(|&(r, c)| base.add(entry(da, r, c), entry(db, r, c))), &radices) as u32);
            let prod = cells.iter().map(|&(r, c)| {
                (0..k).fold(base.zero(), |acc, l| {
                    base.add(acc, base.mul(entry(da, r, l), entry(db, l, c)))
                })
            });
            mul.push(encode(prod, &radices) as u32);
        }
    }
    let zero = encode(cells.iter().map(|_| base.zero()), &radices);
    let one = encode(cells.iter().map(|&(r, c)| if r == c { base.one() } else { base.zero() }), &radices);
    let label = format!("{}{k}({})", if upper_only { "T" } else { "M" }, base.label());
    FiniteRing::from_flat(n, add, mul, zero, one, label)
}

fn wrap(label: &str) -> String {
    if label.contains(' ') {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// Most-significant-first mixed-radix digits of `index`.
fn decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (d, &r) in digits.iter_mut().zip(radices).rev() {
        *d = index % r;
        index /= r;
    }
    digits
}

fn encode(digits: impl Iterator<Item = usize>, radices: &[usize]) -> usize {
    digits.zip(radices).fold(0, |acc, (d, &r)| acc * r + d)
}
