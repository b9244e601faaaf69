//! Closed-form integer expressions in one index variable `n`.
//!
//! Used for interval-family endpoints such as `10^n + 10*n - 1`. Evaluation
//! tries `i128` first and falls back to arbitrary precision on overflow.

use alloc::boxed::Box;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Const(BigInt),
    /// The index variable `n`.
    Index,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// `base^n`.
    Pow(BigInt),
}

impl Expr {
    pub fn constant(value: impl Into<BigInt>) -> Self {
        Expr::Const(value.into())
    }

    pub fn pow(base: impl Into<BigInt>) -> Self {
        Expr::Pow(base.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: Expr) -> Self {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, rhs: Expr) -> Self {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Expr) -> Self {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn eval(&self, n: u64) -> BigInt {
        match self {
            Expr::Const(c) => c.clone(),
            Expr::Index => BigInt::from(n),
            Expr::Add(a, b) => a.eval(n) + b.eval(n),
            Expr::Sub(a, b) => a.eval(n) - b.eval(n),
            Expr::Mul(a, b) => a.eval(n) * b.eval(n),
            Expr::Pow(base) => pow_big(base, n),
        }
    }

    /// Fixed-width evaluation; `None` on overflow anywhere in the tree.
    pub fn eval_i128(&self, n: u64) -> Option<i128> {
        match self {
            Expr::Const(c) => c.to_i128(),
            Expr::Index => Some(i128::from(n)),
            Expr::Add(a, b) => a.eval_i128(n)?.checked_add(b.eval_i128(n)?),
            Expr::Sub(a, b) => a.eval_i128(n)?.checked_sub(b.eval_i128(n)?),
            Expr::Mul(a, b) => a.eval_i128(n)?.checked_mul(b.eval_i128(n)?),
            Expr::Pow(base) => {
                let base = base.to_i128()?;
                base.checked_pow(u32::try_from(n).ok()?)
            }
        }
    }

    /// Compares the value at `n` with `value`.
    pub fn cmp_at(&self, n: u64, value: i64) -> core::cmp::Ordering {
        match self.eval_i128(n) {
            Some(v) => v.cmp(&i128::from(value)),
            None => self.eval(n).cmp(&BigInt::from(value)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Const(c) if c.is_negative() => 0,
            _ => 3,
        }
    }
}

fn pow_big(base: &BigInt, n: u64) -> BigInt {
    if base.is_zero() {
        return if n == 0 { BigInt::from(1) } else { BigInt::zero() };
    }
    let mut result = BigInt::from(1);
    let mut square = base.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result *= &square;
        }
        e >>= 1;
        if e > 0 {
            square = &square * &square;
        }
    }
    result
}

impl fmt::Display for Expr {
    /// Canonical text. Parenthesizes so that re-parsing yields the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Index => f.write_str("n"),
            Expr::Pow(base) if base.is_negative() => write!(f, "({base})^n"),
            Expr::Pow(base) => write!(f, "{base}^n"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                operand(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                operand(f, b, 2)
            }
            Expr::Mul(a, b) => {
                operand(f, a, 2)?;
                f.write_str("*")?;
                operand(f, b, 3)
            }
        }
    }
}
