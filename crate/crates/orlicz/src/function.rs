//! Finitely supported complex functions on `Z^d`.
//!
//! ```
//! use num_complex::Complex64;
//! use orlicz::function::DiscreteFunction;
//! use orlicz::lattice::LatticePoint;
//!
//! let mut f = DiscreteFunction::new(2);
//! f.set(LatticePoint(vec![3, -2]), Complex64::new(1.0, 0.0))?;
//! f.set(LatticePoint(vec![0, 0]), Complex64::new(0.5, -0.5))?;
//! assert_eq!(f.support_size(), 2);
//! # Ok::<(), orlicz::Error>(())
//! ```

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::lattice::{random_point, LatticePoint};

/// A finitely supported function `Z^d -> C`. Zero values are never stored,
/// and entries are kept in a sorted map so iteration and serialization are
/// deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteFunction {
    dim: usize,
    entries: BTreeMap<LatticePoint, Complex64>,
}

impl DiscreteFunction {
    pub fn new(dim: usize) -> Self {
        DiscreteFunction {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// The point mass at `p`.
    pub fn delta(p: LatticePoint) -> Self {
        let mut f = DiscreteFunction::new(p.dim());
        f.set(p, Complex64::new(1.0, 0.0))
            .expect("dimension matches");
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sets `f(p) = v`, dropping the entry when `v = 0`.
    pub fn set(&mut self, p: LatticePoint, v: Complex64) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: p.dim(),
            });
        }
        if v == Complex64::new(0.0, 0.0) {
            self.entries.remove(&p);
        } else {
            self.entries.insert(p, v);
        }
        Ok(())
    }

    /// Adds `v` to `f(p)`.
    pub fn add_at(&mut self, p: LatticePoint, v: Complex64) -> Result<()> {
        let cur = self.get(&p);
        self.set(p, cur + v)
    }

    pub fn get(&self, p: &LatticePoint) -> Complex64 {
        self.entries
            .get(p)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &Complex64)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.entries.keys()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = DiscreteFunction::new(self.dim);
        for (p, v) in &self.entries {
            out.set(p.clone(), c * v).expect("same dimension");
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (p, v) in &other.entries {
            out.add_at(p.clone(), *v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Pointwise product with a weight, `(f w)(s) = f(s) w(s)`.
    pub fn mul_weight(&self, w: &Weight) -> Self {
        let mut out = DiscreteFunction::new(self.dim);
        for (p, v) in &self.entries {
            out.set(p.clone(), v * w.evaluate(p))
                .expect("same dimension");
        }
        out
    }

    /// Pointwise product with the reciprocal weight, `f(s) / w(s)`.
    pub fn mul_inverse_weight(&self, w: &Weight) -> Self {
        let mut out = DiscreteFunction::new(self.dim);
        for (p, v) in &self.entries {
            out.set(p.clone(), v * (-w.log_weight(p)).exp())
                .expect("same dimension");
        }
        out
    }

    /// Sup norm over the support.
    pub fn sup_norm(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `sum |f(s)|`.
    pub fn l1_norm(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).sum()
    }

    /// `(sum |f(s)|^p)^{1/p}`.
    pub fn lp_norm(&self, p: f64) -> f64 {
        self.entries
            .values()
            .map(|v| v.norm().powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// Random function with `points` entries drawn in the sup-norm ball of
    /// `radius`, values uniform in the complex unit square.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, radius: i64, points: usize) -> Self {
        let mut f = DiscreteFunction::new(dim);
        while f.support_size() < points {
            let p = random_point(rng, dim, radius);
            let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            f.set(p, v).expect("dimension matches");
        }
        f
    }
}

#[derive(Serialize, Deserialize)]
struct EntryRepr {
    point: Vec<i64>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    dim: usize,
    entries: Vec<EntryRepr>,
}

impl Serialize for DiscreteFunction {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let repr = FunctionRepr {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(p, v)| EntryRepr {
                    point: p.0.clone(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiscreteFunction {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FunctionRepr::deserialize(deserializer)?;
        let mut f = DiscreteFunction::new(repr.dim);
        for e in repr.entries {
            let p = LatticePoint(e.point);
            if p.dim() != repr.dim {
                return Err(D::Error::custom(format!(
                    "point {p} has dimension {} but file says {}",
                    p.dim(),
                    repr.dim
                )));
            }
            if f.entries.contains_key(&p) {
                return Err(D::Error::custom(format!("duplicate point {p}")));
            }
            f.set(p, Complex64::new(e.re, e.im))
                .map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}
