//! Axiom checking for candidate ring tables.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One ring axiom (or structural requirement) a table pair can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    TableShape,
    EntryInRange,
    AdditiveIdentity,
    AdditiveCommutativity,
    AdditiveAssociativity,
    AdditiveInverse,
    MultiplicativeIdentity,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::TableShape => "tables are not order x order",
            Axiom::EntryInRange => "entry out of range",
            Axiom::AdditiveIdentity => "zero is not an additive identity",
            Axiom::AdditiveCommutativity => "addition is not commutative",
            Axiom::AdditiveAssociativity => "addition is not associative",
            Axiom::AdditiveInverse => "missing additive inverse",
            Axiom::MultiplicativeIdentity => "no multiplicative identity",
            Axiom::MultiplicativeAssociativity => "multiplication is not associative",
            Axiom::LeftDistributivity => "left distributivity fails",
            Axiom::RightDistributivity => "right distributivity fails",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// First offending element tuple in row-major search order.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { ok: violations.is_empty(), violations }
    }

    pub fn violated(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("all ring axioms hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} at {:?}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

/// Checks every ring axiom on the given tables and reports the first witness
/// for each axiom that fails. Never panics on malformed input: shape and
/// range problems are reported as violations and stop the algebraic checks.
pub fn validate(
    add: &[Vec<usize>],
    mul: &[Vec<usize>],
    zero: usize,
    one: usize,
    order: usize,
) -> ValidationReport {
    let n = order;
    let mut out = Vec::new();

    if n == 0 {
        out.push(Violation { axiom: Axiom::TableShape, witness: vec![] });
        return ValidationReport::from_violations(out);
    }
    let bad_shape = |t: &[Vec<usize>]| {
        if t.len() != n {
            Some(t.len())
        } else {
            t.iter().position(|row| row.len() != n)
        }
    };
    if let Some(row) = bad_shape(add).or_else(|| bad_shape(mul)) {
        out.push(Violation { axiom: Axiom::TableShape, witness: vec![row] });
        return ValidationReport::from_violations(out);
    }
    let out_of_range = [zero, one]
        .iter()
        .position(|&e| e >= n)
        .map(|i| vec![[zero, one][i]])
        .or_else(|| first_out_of_range(add, n))
        .or_else(|| first_out_of_range(mul, n));
    if let Some(w) = out_of_range {
        out.push(Violation { axiom: Axiom::EntryInRange, witness: w });
        return ValidationReport::from_violations(out);
    }

    let a = |x: usize, y: usize| add[x][y];
    let m = |x: usize, y: usize| mul[x][y];

    let mut check1 = |axiom, f: &dyn Fn(usize) -> bool| {
        if let Some(x) = (0..n).find(|&x| !f(x)) {
            out.push(Violation { axiom, witness: vec![x] });
        }
    };
    check1(Axiom::AdditiveIdentity, &|x| a(x, zero) == x && a(zero, x) == x);
    check1(Axiom::AdditiveInverse, &|x| (0..n).any(|y| a(x, y) == zero && a(y, x) == zero));
    check1(Axiom::MultiplicativeIdentity, &|x| m(x, one) == x && m(one, x) == x);

    if let Some((x, y)) = pairs(n).find(|&(x, y)| a(x, y) != a(y, x)) {
        out.push(Violation { axiom: Axiom::AdditiveCommutativity, witness: vec![x, y] });
    }

    let triple_checks: [(Axiom, &dyn Fn(usize, usize, usize) -> bool); 4] = [
        (Axiom::AdditiveAssociativity, &|x, y, z| a(a(x, y), z) == a(x, a(y, z))),
        (Axiom::MultiplicativeAssociativity, &|x, y, z| m(m(x, y), z) == m(x, m(y, z))),
        (Axiom::LeftDistributivity, &|x, y, z| m(x, a(y, z)) == a(m(x, y), m(x, z))),
        (Axiom::RightDistributivity, &|x, y, z| m(a(x, y), z) == a(m(x, z), m(y, z))),
    ];
    for (axiom, holds) in triple_checks {
        let failure = pairs(n).find_map(|(x, y)| (0..n).find(|&z| !holds(x, y, z)).map(|z| (x, y, z)));
        if let Some((x, y, z)) = failure {
            out.push(Violation { axiom, witness: vec![x, y, z] });
        }
    }

    // Keep the report in the fixed axiom order regardless of check order.
    out.sort_by_key(|v| v.axiom as u8);
    ValidationReport::from_violations(out)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)))
}

fn first_out_of_range(t: &[Vec<usize>], n: usize) -> Option<Vec<usize>> {
    t.iter().enumerate().find_map(|(i, row)| {
        row.iter().position(|&e| e >= n).map(|j| vec![i, j, row[j]])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_tables(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        (add, mul)
    }

    /// Independent re-check of a single axiom at a concrete witness.
    fn fails_at(add: &[Vec<usize>], mul: &[Vec<usize>], v: &Violation) -> bool {
        let (a, m) = (|x: usize, y: usize| add[x][y], |x: usize, y: usize| mul[x][y]);
        match (v.axiom, v.witness.as_slice()) {
            (Axiom::MultiplicativeAssociativity, &[x, y, z]) => m(m(x, y), z) != m(x, m(y, z)),
            (Axiom::LeftDistributivity, &[x, y, z]) => m(x, a(y, z)) != a(m(x, y), m(x, z)),
            (Axiom::RightDistributivity, &[x, y, z]) => m(a(x, y), z) != a(m(x, z), m(y, z)),
            _ => false,
        }
    }

    #[test]
    fn z6_is_valid() {
        let (add, mul) = zn_tables(6);
        let r = validate(&add, &mul, 0, 1, 6);
        assert!(r.ok, "{r}");
        assert!(r.violations.is_empty());
    }

    #[test]
    fn corrupted_z6_product_is_caught() {
        let (add, mut mul) = zn_tables(6);
        mul[2][3] = 1;
        let r = validate(&add, &mul, 0, 1, 6);
        assert!(!r.ok);
        let algebraic: Vec<_> = r
            .violations
            .iter()
            .filter(|v| {
                matches!(
                    v.axiom,
                    Axiom::MultiplicativeAssociativity
                        | Axiom::LeftDistributivity
                        | Axiom::RightDistributivity
                )
            })
            .collect();
        assert!(!algebraic.is_empty());
        for v in algebraic {
            assert!(fails_at(&add, &mul, v), "reported witness does not fail: {v:?}");
        }
        // Brute force: exactly these three axioms are the ones broken.
        let n = 6;
        let broken_assoc = (0..n).any(|x| {
            (0..n).any(|y| (0..n).any(|z| mul[mul[x][y]][z] != mul[x][mul[y][z]]))
        });
        assert_eq!(broken_assoc, r.violated(Axiom::MultiplicativeAssociativity).is_some());
    }

    #[test]
    fn zero_multiplication_has_no_identity() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        let r = validate(&add, &mul, 0, 1, 2);
        assert!(!r.ok);
        assert_eq!(r.violations[0].axiom, Axiom::MultiplicativeIdentity);
        assert_eq!(r.violations[0].axiom.to_string(), "no multiplicative identity");
        assert_eq!(r.violations.len(), 1);
    }

    #[test]
    fn out_of_range_and_shape_are_violations() {
        let add = vec![vec![0, 1], vec![1, 2]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        let r = validate(&add, &mul, 0, 1, 2);
        assert_eq!(r.violations, vec![Violation { axiom: Axiom::EntryInRange, witness: vec![1, 1, 2] }]);

        let r = validate(&add[..1], &mul, 0, 1, 2);
        assert_eq!(r.violations[0].axiom, Axiom::TableShape);

        let r = validate(&[], &[], 0, 0, 0);
        assert!(!r.ok);
    }

    #[test]
    fn order_one_ring_is_valid() {
        let r = validate(&[vec![0]], &[vec![0]], 0, 0, 1);
        assert!(r.ok);
    }
}
