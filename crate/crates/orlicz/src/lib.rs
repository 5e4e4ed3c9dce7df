//! Orlicz norms, twisted convolution, and algebra criteria on the integer
//! lattices `Z^d`.
//!
//! The crate has three layers:
//!
//! * convex analysis — Young functions, numeric Legendre conjugation,
//!   Luxemburg and Orlicz norms of finitely supported functions
//!   ([`young`], [`norms`]);
//! * the group side — word length on `Z^d`, weights `exp(rho(tau(s)))`
//!   built from concave profiles, 2-cocycles and their polar decomposition,
//!   twisted convolution ([`lattice`], [`twist`]);
//! * diagnostics — certified series verdicts, mechanical checks of the
//!   sufficient conditions under which the twisted convolution makes the
//!   weighted Orlicz space a Banach algebra or an operator algebra, and a
//!   constructive counterexample profile ([`series`], [`criteria`],
//!   [`counterexample`]).
//!
//! The companion guide in `book/` walks through the same API with narrative
//! chapters; every snippet there is mirrored by a doc-test below or in the
//! module docs.
//!
//! # Quick start
//!
//! Compute both norms of a two-point function and check the sandwich
//! `N(f) <= ||f|| <= 2 N(f)`:
//!
//! ```
//! use num_complex::Complex64;
//! use orlicz::function::DiscreteFunction;
//! use orlicz::lattice::LatticePoint;
//! use orlicz::norms::{luxemburg_norm, orlicz_norm};
//! use orlicz::young::power;
//!
//! let phi = power(2.0)?;
//! let mut f = DiscreteFunction::new(1);
//! f.set(LatticePoint(vec![0]), Complex64::new(1.0, 0.0))?;
//! f.set(LatticePoint(vec![3]), Complex64::new(1.0, 0.0))?;
//!
//! let n = luxemburg_norm(&phi, &f)?;
//! let o = orlicz_norm(&phi, &f)?;
//! assert!((n - 1.0).abs() < 1e-9);
//! assert!((o - 2.0).abs() < 1e-9);
//! assert!(n <= o && o <= 2.0 * n + 1e-9);
//! # Ok::<(), orlicz::error::Error>(())
//! ```
//!
//! Twist a convolution by a coboundary cocycle and watch the weight
//! intertwine it with the plain convolution:
//!
//! ```
//! use orlicz::function::DiscreteFunction;
//! use orlicz::lattice::{coboundary, LatticePoint, Weight};
//! use orlicz::twist::twisted_convolve;
//!
//! let w = Weight::poly(1.0)?;
//! let omega = coboundary(w);
//! let d1 = DiscreteFunction::delta(LatticePoint(vec![1]));
//! let conv = twisted_convolve(&omega, &d1, &d1)?.result;
//! // single term: Omega(1,1) = w(2) / w(1)^2 = 3/4
//! assert!((conv.get(&LatticePoint(vec![2])).re - 0.75).abs() < 1e-14);
//! # Ok::<(), orlicz::error::Error>(())
//! ```

pub mod counterexample;
pub mod criteria;
pub mod error;
pub mod function;
pub mod lattice;
pub mod norms;
pub mod series;
pub mod twist;
pub mod young;

pub use error::{Error, Result};
pub use num_complex::Complex64;
