use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials are over different variable tables")]
    VarTableMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown irrep `{0}`")]
    UnknownIrrep(String),
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
    #[error("irrep product does not contain the target (zero multiplicity)")]
    ZeroMultiplicity,
    #[error("invalid group definition: {0}")]
    InvalidGroup(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFunError {
    #[error("target denominator does not clear the generating function (not a polynomial)")]
    NotPolynomial,
    #[error("generating functions use different numbers of grading variables ({0} vs {1})")]
    VariableMismatch(usize, usize),
    #[error("Molien sum produced a non-integer coefficient")]
    NonIntegral,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasisError {
    #[error("no tabulated elementary basis for initial {initial} / final {final_irrep} in group {group}")]
    UnknownPair {
        group: String,
        initial: String,
        final_irrep: String,
    },
    #[error("numerator count mismatch at degree {degree}: accepted {found}, expected {expected}")]
    CountMismatch {
        degree: u32,
        found: usize,
        expected: usize,
    },
    #[error("degree-{degree} covariant is not spanned by the Hironaka products")]
    NotInModule { degree: u32 },
    #[error("denominators of slice {slice} do not form a system of parameters")]
    NotParameters { slice: usize },
    #[error("malformed basis file: {0}")]
    Malformed(String),
    #[error("polynomial is not a covariant of type {irrep},{partner}")]
    NotCovariant { irrep: String, partner: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GenFun(#[from] GenFunError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
