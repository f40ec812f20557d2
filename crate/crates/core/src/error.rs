use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty tree text")]
    EmptyInput,

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),

    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),

    #[error("cannot delete the only vertex of a tree")]
    SingletonTree,

    #[error("root has {0} children, expected exactly one")]
    RootNotUnary(usize),

    #[error("vertex {descendant} is not a strict descendant of vertex {ancestor}")]
    NotADescendant { ancestor: usize, descendant: usize },

    #[error("interior path vertex {vertex} has {children} children, expected exactly one")]
    BranchingPath { vertex: usize, children: usize },

    #[error("tree size must be at least 1")]
    ZeroSize,

    #[error("size guard exceeded: {what} is {actual}, limit is {limit}")]
    GuardExceeded { what: &'static str, actual: usize, limit: usize },

    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),

    #[error("malformed predicate parameter in `{0}`")]
    BadPredicateParameter(String),

    #[error("unknown quantity `{0}`")]
    UnknownQuantity(String),

    #[error("not a knot: boundary has {0} components")]
    NotAKnot(usize),

    #[error("predicate `{predicate}` is only defined on knots; tree {tree} bounds a {components}-component link")]
    DomainViolation { predicate: String, tree: String, components: usize },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Json(err.to_string())
    }
}
