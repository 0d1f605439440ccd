//! Exact quadratic-form computations over `F_p` and `Z/p^k` (`p` odd).
//!
//! - [`ring`]: the coefficient rings, with units exactly the elements of
//!   nonzero residue.
//! - [`linalg`]: matrices, unit-pivot elimination, subspaces of `F_p^n` and
//!   free direct summands of `(Z/p^k)^n`.
//! - [`quadform`]: Gram forms and Pfister forms.
//! - [`witt`]: reflections, Witt decomposition, Cartan–Dieudonné, Hensel
//!   lifting of isotropic vectors and of isometries.
//! - [`keygeom`]: Lagrangians meeting a subspace in a line, over the residue
//!   field and lifted to `Z/p^k`.
//! - [`solver`]: solving `Q = c` for a Pfister form `Q` and a unit `c`.
//! - [`flagcount`]: point counts of flag varieties and isotropic
//!   Grassmannians.
//! - [`selftest`]: the acceptance suite; [`cli`]: the command-line front end.
//!
//! Conventions: `Q(v) = vᵀ G v` and `B(u, v) = uᵀ G v`, so `B(v, v) = Q(v)`
//! and the hyperbolic plane has Gram matrix `[[0, 1], [1, 0]]`.
//!
//! ```
//! use isoform::quadform::PfisterSpec;
//! use isoform::ring::RingDescriptor;
//! use isoform::solver::{solve_pfister, RepresentationProblem, Verdict};
//!
//! let r: RingDescriptor = "zpk:5,2".parse().unwrap();
//! let spec = PfisterSpec::from_i64(r, &[2]).unwrap();
//! let cert = solve_pfister(&RepresentationProblem::new(spec, 3).unwrap(), 0).unwrap();
//! assert_eq!(cert.verdict, Verdict::Solved);
//! assert!(cert.verify().unwrap());
//! ```

pub mod cli;
pub mod error;
pub mod flagcount;
pub mod gen;
pub mod keygeom;
pub mod linalg;
pub mod quadform;
pub mod ring;
pub mod selftest;
pub mod solver;
pub mod witt;

pub use error::{Error, Result};
pub use quadform::{GramForm, PfisterSpec};
pub use ring::RingDescriptor;
