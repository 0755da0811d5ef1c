use alloc::string::String;

/// Which crossed-complex axiom a validation failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `δ_{n-1} ∘ δ_n` is not trivial.
    BoundaryComposite,
    /// `δ₂(c^x) = x⁻¹ (δ₂c) x` fails.
    CM1,
    /// Peiffer identity `c^{δ₂c'} = c'⁻¹ c c'` fails.
    CM2,
    /// A level of dimension ≥ 3 is not abelian.
    NonAbelianHigh,
    /// `δ₂(C₂)` acts nontrivially on a level of dimension ≥ 3.
    PeifferActionHigh,
    /// A boundary map does not commute with the action.
    Equivariance,
    /// The action is not a groupoid action by automorphisms.
    Action,
    /// Tables are malformed (sizes, index ranges, objects).
    Shape,
}

impl core::fmt::Display for Axiom {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let s = match self {
            Axiom::BoundaryComposite => "BoundaryComposite",
            Axiom::CM1 => "CM1",
            Axiom::CM2 => "CM2",
            Axiom::NonAbelianHigh => "NonAbelianHigh",
            Axiom::PeifferActionHigh => "PeifferActionHigh",
            Axiom::Equivariance => "Equivariance",
            Axiom::Action => "Action",
            Axiom::Shape => "Shape",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("element 0 is not a two-sided identity (fails at element {element})")]
    NoIdentityAtZero { element: usize },
    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("multiplication is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unsupported size {size} for preset `{name}`")]
    UnsupportedSize { name: String, size: usize },
    #[error("coefficient group is not abelian at ({a}, {b})")]
    NotAbelian { a: usize, b: usize },
    #[error("action of element {element} is not an automorphism")]
    ActionNotAutomorphism { element: usize },
    #[error("action is not a homomorphism at ({a}, {b})")]
    ActionNotHomomorphism { a: usize, b: usize },
    #[error("crossed complex axiom {axiom} violated: {witness}")]
    Axiom { axiom: Axiom, witness: String },
    #[error("bad dimension {0}")]
    BadDimension(usize),
    #[error("dimension {0} out of range")]
    DimensionOutOfRange(usize),
    #[error("complex is not aspherical in the required range: H_{0} is nontrivial")]
    NotAspherical(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("morphism is not a fibration: {0}")]
    NotAFibration(String),
    #[error("morphism is not a trivial fibration: {0}")]
    NotTrivialFibration(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("no value assigned to basis element {index} in dimension {dim}")]
    MissingBasisValue { dim: usize, index: usize },
    #[error("morphisms induce different maps on fundamental groups")]
    IncompatibleTheta,
    #[error("presentation depth {depth} is too shallow for degree {degree}")]
    DepthTooShallow { depth: usize, degree: usize },
    #[error("ambient data of the two operands differ")]
    AmbientMismatch,
    #[error("invalid factor set: {0}")]
    InvalidFactorSet(String),
    #[error("factor sets belong to different abstract kernels")]
    KernelMismatch,
    #[error("search space of size {size} exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

pub type Result<T> = core::result::Result<T, Error>;
