//! Printing in the same ASCII grammar the parser accepts. Runs of equal
//! factors are printed as powers.

use core::fmt::{self, Display, Formatter, Write};

use super::{Relation, Statement, Term};

fn is_atomic(t: &Term) -> bool {
    matches!(t, Term::Var(_) | Term::One | Term::Zero)
}

/// Print `t` where a factor (an atom that may take `^n`) is expected.
fn write_atom(f: &mut Formatter<'_>, t: &Term) -> fmt::Result {
    if is_atomic(t) {
        write!(f, "{t}")
    } else {
        write!(f, "({t})")
    }
}

/// One run of `count` equal factors.
fn write_run(f: &mut Formatter<'_>, factor: &Term, count: usize) -> fmt::Result {
    match factor {
        Term::Inv(inner) => {
            write_atom(f, inner)?;
            write!(f, "^-{count}")
        }
        _ => {
            write_atom(f, factor)?;
            if count > 1 {
                write!(f, "^{count}")?;
            }
            Ok(())
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::One => f.write_char('e'),
            Term::Zero => f.write_char('0'),
            Term::Inv(_) => write_run(f, self, 1),
            Term::Mul(ts) => {
                let mut i = 0;
                let mut first = true;
                while i < ts.len() {
                    let mut j = i + 1;
                    while j < ts.len() && ts[j] == ts[i] {
                        j += 1;
                    }
                    if !first {
                        f.write_char('*')?;
                    }
                    first = false;
                    write_run(f, &ts[i], j - i)?;
                    i = j;
                }
                Ok(())
            }
            Term::Join(ts) | Term::Meet(ts) => {
                let (sep, other) = match self {
                    Term::Join(_) => (" \\/ ", true),
                    _ => (" /\\ ", false),
                };
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    let needs_parens = match t {
                        Term::Meet(_) => other,
                        Term::Join(_) => !other,
                        _ => false,
                    };
                    if needs_parens {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl Display for Relation {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
        })
    }
}

impl Display for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.relation, self.rhs)
    }
}

impl fmt::Debug for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "Statement[{}]({self})", self.signature)
    }
}
