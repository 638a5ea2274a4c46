//! Relations read off matrix null spaces, binary dependence matrices, and the
//! map from partitions to circuit families.
//!
//! `relation_from_matrix` relates `x_i` and `x_j` when `e_i + e_j` lies in the
//! null space, i.e. when column `i` is the negative of column `j`. Over GF(2)
//! that means equal columns, so the relation is always an equivalence. Over
//! other fields it need not be transitive.
//!
//! A matrix is a *binary dependence matrix* when it has no zero column and
//! every dependent column subset of size `k >= 2` contains a dependent pair.
//! [`is_binary_dependence`] decides this with an equivalent test: no zero
//! column, and every circuit of the vector matroid has exactly two elements.
//!
//! Why the two agree: if every circuit is a pair, each dependent set contains
//! a circuit and hence a dependent pair. Conversely, with no zero column there
//! are no one-element circuits; a circuit is dependent, so it contains a
//! dependent pair, and minimality forces the circuit to be that pair.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::linalg::ExactMatrix;
use crate::matroid::{circuits_via_nullspace, matroids_equal, VectorMatroid};
use crate::roughsets::Partition;
use crate::sets::{ElementSet, SetFamily, Universe};

/// A binary relation on a universe, as a set of ordered index pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct PairRelation {
    universe: Universe,
    pairs: BTreeSet<(usize, usize)>,
}

impl PairRelation {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(
        universe: &Universe,
        pairs: I,
    ) -> Result<PairRelation> {
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        if let Some(&(a, b)) = pairs
            .iter()
            .find(|(a, b)| *a >= universe.len() || *b >= universe.len())
        {
            return Err(Error::UnknownLabel(format!("#{}", a.max(b))));
        }
        Ok(PairRelation {
            universe: universe.clone(),
            pairs,
        })
    }

    /// The equivalence relation whose classes are the blocks of `partition`.
    pub fn from_partition(partition: &Partition) -> PairRelation {
        let pairs = partition
            .blocks()
            .iter()
            .flat_map(|b| b.iter().flat_map(move |&x| b.iter().map(move |&y| (x, y))))
            .collect();
        PairRelation {
            universe: partition.universe().clone(),
            pairs,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.universe.len()).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .range((b, 0)..(b + 1, 0))
                .all(|&(_, c)| self.contains(a, c))
        })
    }

    /// The classes, when the relation is an equivalence.
    pub fn to_partition(&self) -> Option<Partition> {
        if !is_equivalence(self) {
            return None;
        }
        let keys: Vec<usize> = (0..self.universe.len())
            .map(|x| (0..=x).find(|&y| self.contains(x, y)).expect("reflexive"))
            .collect();
        Partition::from_keys(&self.universe, &keys).ok()
    }
}

impl fmt::Debug for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(
                self.pairs
                    .iter()
                    .map(|&(a, b)| (self.universe.label(a), self.universe.label(b))),
            )
            .finish()
    }
}

/// One pair per line: `xi xj`.
impl fmt::Display for PairRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(a, b) in &self.pairs {
            writeln!(f, "{} {}", self.universe.label(a), self.universe.label(b))?;
        }
        Ok(())
    }
}

/// `(x_i, x_j)` is related iff `i = j` or `A (e_i + e_j) = 0` over the
/// matrix's field.
pub fn relation_from_matrix(matrix: &ExactMatrix) -> PairRelation {
    let n = matrix.cols();
    let cancels = |i: usize, j: usize| {
        (0..matrix.rows()).all(|r| matrix.get(r, i).sum(matrix.get(r, j)).is_zero())
    };
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i == j || cancels(i, j))
        .collect();
    PairRelation {
        universe: matrix.labels().clone(),
        pairs,
    }
}

/// Reflexive, symmetric and transitive.
pub fn is_equivalence(relation: &PairRelation) -> bool {
    relation.is_reflexive() && relation.is_symmetric() && relation.is_transitive()
}

/// The partition of a GF(2) matrix's labels into classes of equal columns.
pub fn partition_from_matrix_gf2(matrix: &ExactMatrix) -> Result<Partition> {
    if matrix.spec() != FieldSpec::Binary {
        return Err(Error::WrongField(matrix.spec()));
    }
    let columns: Vec<_> = (0..matrix.cols()).map(|c| matrix.column(c)).collect();
    Partition::from_keys(matrix.labels(), &columns)
}

/// Why a matrix fails to be a binary dependence matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BdmWitness {
    /// Index of a zero column.
    ZeroColumn(usize),
    /// A dependent column set in which every pair is independent.
    DependentSet(ElementSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BdmVerdict {
    Member,
    NonMember(BdmWitness),
}

impl BdmVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, BdmVerdict::Member)
    }

    pub fn witness(&self) -> Option<&BdmWitness> {
        match self {
            BdmVerdict::Member => None,
            BdmVerdict::NonMember(w) => Some(w),
        }
    }
}

/// Decides binary-dependence membership. The witness is the first zero column,
/// or else the first circuit (in canonical order) with more than two elements.
pub fn is_binary_dependence(matrix: &ExactMatrix) -> Result<BdmVerdict> {
    if let Some(c) = (0..matrix.cols()).find(|&c| matrix.is_zero_column(c)) {
        return Ok(BdmVerdict::NonMember(BdmWitness::ZeroColumn(c)));
    }
    let circuits = VectorMatroid::new(matrix.clone()).circuits()?;
    let verdict = match circuits.iter().find(|c| c.len() != 2) {
        Some(big) => BdmVerdict::NonMember(BdmWitness::DependentSet(big)),
        None => BdmVerdict::Member,
    };
    Ok(verdict)
}

/// Minimal nonempty null space supports of the GF(2) incidence matrix of
/// `partition`. These are exactly the pairs inside a block.
pub fn iso_f(partition: &Partition) -> Result<SetFamily> {
    circuits_via_nullspace(&partition.encode_matrix(FieldSpec::Binary))
}

/// Whether `iso_f` maps the meet of the two partitions to the intersection
/// of their images.
pub fn verify_homomorphism(left: &Partition, right: &Partition) -> Result<bool> {
    let meet = left.meet(right)?;
    let image_of_meet = iso_f(&meet)?;
    let meet_of_images = iso_f(left)?.intersection(&iso_f(right)?)?;
    Ok(image_of_meet == meet_of_images)
}

/// For a binary dependence matrix `A` over GF(2): read off its partition,
/// re-encode it, and compare the two vector matroids.
pub fn roundtrip_matroid_equal(matrix: &ExactMatrix) -> Result<bool> {
    if matrix.spec() != FieldSpec::Binary {
        return Err(Error::WrongField(matrix.spec()));
    }
    if !is_binary_dependence(matrix)?.is_member() {
        return Err(Error::NotBinaryDependence);
    }
    let partition = partition_from_matrix_gf2(matrix)?;
    let encoded = VectorMatroid::new(partition.encode_matrix(FieldSpec::Binary));
    matroids_equal(&encoded, &VectorMatroid::new(matrix.clone()))
}
