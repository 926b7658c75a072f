//! A small expression language in one variable `x`.
//!
//! Grammar (whitespace insignificant, `−` accepted for `-`):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' factor)?
//! base   := number | 'x' | 'pi' | 'e' | ident '(' expr (',' expr)? ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)`. Functions: `exp ln sqrt sin cos abs sign pow(base, exponent)`.

mod ast;
mod diff;
mod parser;
mod function;

pub use ast::{BinOp, EvalError, EvalFault, Expr, Func};
pub use diff::differentiate;
pub use parser::{parse, ParseError, MAX_DEPTH};
pub use function::{DerivativeMode, FnWrap, FunctionSpec, RealFn};
