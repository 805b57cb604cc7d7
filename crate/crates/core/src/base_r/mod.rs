//! Base-`r` numeration: signed expansions, the digit predicate `V_r`,
//! empirical Nerode counts and weak Büchi real-vector automata.

mod automaton;
mod expansion;
mod nerode;
mod word;

pub use automaton::*;
pub use expansion::{encode, is_r_adic, max_precision, power_of, v_r, MAX_EXPONENT};
pub use nerode::*;
pub use word::{decode, parse_word, DigitWord, STAR};
