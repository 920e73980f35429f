//! Working-precision context threaded through every certified computation.

use crate::{Error, Result};

/// Precision budget for ball arithmetic.
///
/// `bits` is the current working precision; `cap` bounds escalation.  The
/// defaults (256 bits, cap 4096) decide every corpus example; inputs that
/// exhaust the cap surface [`Error::PrecisionExhausted`] rather than an
/// unsound answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ctx {
    /// Current working precision in bits.
    pub bits: u32,
    /// Hard ceiling for precision escalation.
    pub cap: u32,
    /// Extra truncation slack, in whole exponent units, added past the
    /// certified truncation order when expanding arcs.
    pub guard: u32,
}

impl Default for Ctx {
    fn default() -> Self {
        Ctx { bits: 256, cap: 4096, guard: 1 }
    }
}

impl Ctx {
    /// Context with a given working precision and the default cap.
    pub fn with_bits(bits: u32) -> Self {
        Ctx { bits, ..Ctx::default() }
    }

    /// Double the working precision, or `None` once the cap is passed.
    pub fn escalate(&self) -> Option<Ctx> {
        let next = self.bits.saturating_mul(2);
        if self.bits >= self.cap {
            None
        } else {
            Some(Ctx { bits: next.min(self.cap), ..*self })
        }
    }

    /// Run `op` at increasing precision until it stops returning
    /// [`Error::Indeterminate`]; translate final indeterminacy into
    /// [`Error::PrecisionExhausted`].
    pub fn with_escalation<T>(&self, mut op: impl FnMut(&Ctx) -> Result<T>) -> Result<T> {
        let mut ctx = *self;
        loop {
            match op(&ctx) {
                Err(Error::Indeterminate) => match ctx.escalate() {
                    Some(next) => ctx = next,
                    None => return Err(Error::PrecisionExhausted),
                },
                other => return other,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escalation_doubles_until_cap() {
        let ctx = Ctx { bits: 256, cap: 1024, guard: 1 };
        let next = ctx.escalate().unwrap();
        assert_eq!(next.bits, 512);
        let last = next.escalate().unwrap();
        assert_eq!(last.bits, 1024);
        assert!(last.escalate().is_none());
    }

    #[test]
    fn with_escalation_retries_then_gives_up() {
        let ctx = Ctx { bits: 64, cap: 256, guard: 1 };
        let mut seen = Vec::new();
        let out: Result<u32> = ctx.with_escalation(|c| {
            seen.push(c.bits);
            if c.bits >= 256 {
                Ok(c.bits)
            } else {
                Err(Error::Indeterminate)
            }
        });
        assert_eq!(out.unwrap(), 256);
        assert_eq!(seen, vec![64, 128, 256]);

        let out: Result<u32> = ctx.with_escalation(|_| Err(Error::Indeterminate));
        assert_eq!(out.unwrap_err(), Error::PrecisionExhausted);
    }
}
