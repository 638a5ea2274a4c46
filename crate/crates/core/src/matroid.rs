//! Vector matroids, the partition matroid of an equivalence relation, and the
//! support-based characterizations of circuits and bases.
//!
//! Brute-force routines scan subsets of the ground set and are guarded by
//! [`MAX_GROUND`]. Circuits come from an ascending-cardinality scan that skips
//! supersets of circuits already found, which works over any field. The null
//! space route in [`circuits_via_nullspace`] is an independent second path
//! that only works over finite fields.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::linalg::{ExactMatrix, Vector};
use crate::roughsets::Partition;
use crate::sets::{indices_to_mask, ElementSet, SetFamily, Universe};

/// Largest ground set the subset scans accept.
pub const MAX_GROUND: usize = 16;

/// Cap on the summed sizes of power sets produced by [`downward_closure`].
pub const MAX_CLOSURE: u128 = 1 << 20;

/// Cap on the number of transversals [`partition_bases`] lists.
pub const MAX_TRANSVERSALS: u128 = 1 << 20;

/// The matroid on the column labels of a matrix whose independent sets are
/// the linearly independent column subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorMatroid {
    matrix: ExactMatrix,
}

impl VectorMatroid {
    pub fn new(matrix: ExactMatrix) -> VectorMatroid {
        VectorMatroid { matrix }
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn ground(&self) -> &Universe {
        self.matrix.labels()
    }

    pub fn spec(&self) -> FieldSpec {
        self.matrix.spec()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn independent(&self, set: &ElementSet) -> Result<bool> {
        if set.universe() != self.ground() {
            return Err(Error::UnknownLabel(set.to_string()));
        }
        Ok(self.matrix.columns_independent_at(set.members()))
    }

    pub(crate) fn independent_mask(&self, mask: u64) -> bool {
        self.matrix
            .columns_independent_at(&crate::sets::mask_to_indices(mask))
    }

    fn guard(&self) -> Result<usize> {
        let n = self.ground().len();
        if n > MAX_GROUND {
            Err(Error::GroundTooLarge { n, cap: MAX_GROUND })
        } else {
            Ok(n)
        }
    }

    /// Every independent set.
    pub fn independent_sets(&self) -> Result<SetFamily> {
        self.guard()?;
        let masks = self
            .ground()
            .all_subset_masks()
            .filter(|&m| self.independent_mask(m));
        Ok(SetFamily::from_masks(self.ground(), masks))
    }

    /// All minimal dependent sets.
    pub fn circuits(&self) -> Result<SetFamily> {
        let n = self.guard()?;
        let mut found: Vec<u64> = Vec::new();
        for k in 1..=n.min(self.matrix.rows() + 1) {
            for combo in (0..n).combinations(k) {
                let mask = indices_to_mask(&combo);
                if found.iter().any(|c| c & mask == *c) {
                    continue;
                }
                // Every proper subset avoids all smaller circuits, so it is
                // independent; a dependent set here is therefore minimal.
                if !self.matrix.columns_independent_at(&combo) {
                    found.push(mask);
                }
            }
        }
        Ok(SetFamily::from_masks(self.ground(), found))
    }

    /// All independent sets of cardinality equal to the rank.
    pub fn bases(&self) -> Result<SetFamily> {
        let n = self.guard()?;
        let r = self.rank();
        let masks = (0..n)
            .combinations(r)
            .filter(|combo| self.matrix.columns_independent_at(combo))
            .map(|combo| indices_to_mask(&combo))
            .collect::<Vec<_>>();
        Ok(SetFamily::from_masks(self.ground(), masks))
    }

    /// The same matroid with ground labels renamed by `rename`.
    pub fn relabeled<F: Fn(&str) -> String>(&self, rename: F) -> Result<VectorMatroid> {
        let labels = Universe::new(self.ground().labels().iter().map(|l| rename(l)))?;
        Ok(VectorMatroid::new(self.matrix.clone().with_labels(labels)?))
    }
}

/// Whether two matroids on the same labelled ground set have the same
/// independent sets.
pub fn matroids_equal(left: &VectorMatroid, right: &VectorMatroid) -> Result<bool> {
    if left.ground() != right.ground() {
        return Err(Error::GroundMismatch);
    }
    left.guard()?;
    Ok(left
        .ground()
        .all_subset_masks()
        .all(|m| left.independent_mask(m) == right.independent_mask(m)))
}

/// The set of ground elements where `v` is nonzero.
pub fn support(v: &Vector, ground: &Universe) -> Result<ElementSet> {
    if v.len() != ground.len() {
        return Err(Error::LengthMismatch {
            expected: ground.len(),
            found: v.len(),
        });
    }
    ground.subset_of_indices(v.nonzero_indices())
}

/// Members with no proper subset in the family.
pub fn min_family(family: &SetFamily) -> SetFamily {
    family.minimal()
}

/// All subsets of members of the family. The empty family stays empty.
pub fn downward_closure(family: &SetFamily) -> Result<SetFamily> {
    let count: u128 = family
        .index_sets()
        .iter()
        .map(|s| 1u128.checked_shl(s.len() as u32).unwrap_or(u128::MAX))
        .fold(0u128, u128::saturating_add);
    if count > MAX_CLOSURE {
        return Err(Error::ClosureTooLarge {
            count,
            cap: MAX_CLOSURE,
        });
    }
    let mut masks = Vec::new();
    for mask in family.masks() {
        // Walk all submasks of `mask`.
        let mut sub = mask;
        loop {
            masks.push(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    Ok(SetFamily::from_masks(family.universe(), masks))
}

/// Circuits of the partition matroid: pairs inside one block.
pub fn partition_circuits(partition: &Partition) -> SetFamily {
    let pairs = partition
        .blocks()
        .iter()
        .flat_map(|b| b.iter().copied().tuple_combinations::<(usize, usize)>())
        .map(|(a, b)| vec![a, b])
        .collect();
    SetFamily::from_index_sets(partition.universe(), pairs)
}

/// Bases of the partition matroid: sets meeting every block exactly once.
pub fn partition_bases(partition: &Partition) -> Result<SetFamily> {
    let count = partition
        .blocks()
        .iter()
        .map(|b| b.len() as u128)
        .fold(1u128, u128::saturating_mul);
    if count > MAX_TRANSVERSALS {
        return Err(Error::TooManyTransversals {
            count,
            cap: MAX_TRANSVERSALS,
        });
    }
    let sets = partition
        .blocks()
        .iter()
        .map(|b| b.iter().copied())
        .multi_cartesian_product()
        .collect();
    Ok(SetFamily::from_index_sets(partition.universe(), sets))
}

/// Independent in the partition matroid: meets each block at most once.
pub fn partition_independent(partition: &Partition, set: &ElementSet) -> Result<bool> {
    set.ensure_universe(partition.universe())?;
    Ok(partition
        .blocks()
        .iter()
        .all(|b| b.iter().filter(|&&x| set.contains(x)).count() <= 1))
}

/// Minimal nonempty supports of null space vectors, enumerated exhaustively.
pub fn circuits_via_nullspace(matrix: &ExactMatrix) -> Result<SetFamily> {
    let kernel = matrix.null_space_basis();
    let mut supports = Vec::new();
    for v in kernel.enumerate()? {
        let s = v.nonzero_indices();
        if !s.is_empty() {
            supports.push(s);
        }
    }
    Ok(SetFamily::from_index_sets(matrix.labels(), supports).minimal())
}

/// Minimal supports of the solutions of `A x = 1` over GF(2), for a
/// block-incidence matrix `A`.
pub fn bases_via_ones(matrix: &ExactMatrix) -> Result<SetFamily> {
    if matrix.spec() != FieldSpec::Binary {
        return Err(Error::WrongField(matrix.spec()));
    }
    check_partition_matrix(matrix)?;
    let solutions = matrix.solve_ones();
    let supports = solutions
        .enumerate()?
        .map(|v| v.nonzero_indices())
        .collect();
    Ok(SetFamily::from_index_sets(matrix.labels(), supports).minimal())
}

/// One nonzero entry per column and no zero row.
fn check_partition_matrix(matrix: &ExactMatrix) -> Result<()> {
    for c in 0..matrix.cols() {
        let nonzero = (0..matrix.rows())
            .filter(|&r| !matrix.get(r, c).is_zero())
            .count();
        if nonzero != 1 {
            return Err(Error::NotAPartitionMatrix(format!(
                "column {} has {nonzero} nonzero entries",
                matrix.labels().label(c)
            )));
        }
    }
    for r in 0..matrix.rows() {
        if matrix.row(r).iter().all(|e| e.is_zero()) {
            return Err(Error::NotAPartitionMatrix(format!("row {} is zero", r + 1)));
        }
    }
    Ok(())
}
