//! Surface parameters, derived counts, and special-case dispatch.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A connected orientable surface of genus `g` with `n` punctures and no
/// boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    genus: u32,
    punctures: u32,
}

/// Dispatch labels for the handful of surfaces the theory treats separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialCase {
    /// (0,1): the complex has no vertices at all.
    EmptyComplex,
    /// (0,2): a single arc class and nothing else.
    SinglePoint,
    /// (0,3): the whole arc-and-curve complex is finite.
    FiniteS03,
    /// (1,1): curve adjacency means intersection number one (Farey model).
    Farey11,
    /// (0,4): curve adjacency means intersection number two (Farey model).
    Sphere04,
    /// 2g+n >= 5: the general arguments apply verbatim.
    Generic,
    /// (1,2): triangulable, but outside every case treated by the proofs.
    SmallOther,
}

impl Surface {
    pub fn new(genus: u32, punctures: u32) -> Surface {
        Surface { genus, punctures }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    /// Euler characteristic 2 - 2g - n of the punctured surface.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// Number of edges of any ideal triangulation: 6g + 3n - 6.
    pub fn edge_count(&self) -> i64 {
        6 * self.genus as i64 + 3 * self.punctures as i64 - 6
    }

    /// Number of triangles of any ideal triangulation: 4g + 2n - 4.
    pub fn face_count(&self) -> i64 {
        4 * self.genus as i64 + 2 * self.punctures as i64 - 4
    }

    /// Dimension of a maximal simplex of minimal dimension: 3g + 2n - 4.
    pub fn min_maximal_dim(&self) -> i64 {
        3 * self.genus as i64 + 2 * self.punctures as i64 - 4
    }

    /// Dimension of a maximal simplex of maximal dimension: 6g + 3n - 7.
    pub fn max_maximal_dim(&self) -> i64 {
        self.edge_count() - 1
    }

    /// True when the surface carries an ideal triangulation.
    pub fn triangulable(&self) -> bool {
        self.punctures >= 1 && self.euler_characteristic() < 0
    }

    /// Errors out unless an ideal triangulation exists.
    pub fn require_triangulable(&self) -> Result<()> {
        if self.triangulable() {
            Ok(())
        } else {
            Err(Error::UnsupportedSurface {
                genus: self.genus,
                punctures: self.punctures,
                reason: "needs n >= 1 and negative Euler characteristic".into(),
            })
        }
    }

    /// Which special regime the surface falls into. Total and deterministic:
    /// exactly one label per (g, n).
    pub fn special_case(&self) -> SpecialCase {
        match (self.genus, self.punctures) {
            (0, 1) => SpecialCase::EmptyComplex,
            (0, 2) => SpecialCase::SinglePoint,
            (0, 3) => SpecialCase::FiniteS03,
            (1, 1) => SpecialCase::Farey11,
            (0, 4) => SpecialCase::Sphere04,
            (1, 2) => SpecialCase::SmallOther,
            (g, n) if 2 * g as u64 + n as u64 >= 5 => SpecialCase::Generic,
            // Remaining surfaces: (0,0), (1,0), (2,0), (0 punctures in
            // general with 2g+n < 5). None of them carries arcs; they get
            // the catch-all label so the function stays total.
            _ => SpecialCase::SmallOther,
        }
    }
}

impl std::fmt::Display for Surface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristic_values() {
        assert_eq!(Surface::new(0, 3).euler_characteristic(), -1);
        assert_eq!(Surface::new(1, 1).euler_characteristic(), -1);
        assert_eq!(Surface::new(0, 4).euler_characteristic(), -2);
    }

    #[test]
    fn euler_identity_holds_everywhere() {
        for g in 0..8 {
            for n in 0..8 {
                let s = Surface::new(g, n);
                assert_eq!(
                    s.euler_characteristic() + 2 * g as i64 + n as i64,
                    2,
                    "chi + 2g + n must be 2 for {s}"
                );
            }
        }
    }

    #[test]
    fn special_cases() {
        assert_eq!(Surface::new(0, 1).special_case(), SpecialCase::EmptyComplex);
        assert_eq!(Surface::new(0, 2).special_case(), SpecialCase::SinglePoint);
        assert_eq!(Surface::new(0, 3).special_case(), SpecialCase::FiniteS03);
        assert_eq!(Surface::new(1, 1).special_case(), SpecialCase::Farey11);
        assert_eq!(Surface::new(0, 4).special_case(), SpecialCase::Sphere04);
        assert_eq!(Surface::new(1, 2).special_case(), SpecialCase::SmallOther);
        assert_eq!(Surface::new(0, 5).special_case(), SpecialCase::Generic);
        assert_eq!(Surface::new(2, 1).special_case(), SpecialCase::Generic);
    }

    #[test]
    fn edge_counts() {
        assert_eq!(Surface::new(0, 3).edge_count(), 3);
        assert_eq!(Surface::new(1, 1).edge_count(), 3);
        assert_eq!(Surface::new(0, 4).edge_count(), 6);
        assert_eq!(Surface::new(1, 2).edge_count(), 6);
        assert_eq!(Surface::new(0, 5).edge_count(), 9);
    }

    #[test]
    fn triangulability() {
        assert!(!Surface::new(0, 1).triangulable());
        assert!(!Surface::new(0, 2).triangulable());
        assert!(!Surface::new(1, 0).triangulable());
        assert!(Surface::new(0, 3).triangulable());
        assert!(Surface::new(1, 1).triangulable());
        assert!(Surface::new(2, 1).triangulable());
    }
}
