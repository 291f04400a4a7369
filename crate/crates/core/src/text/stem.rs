use alloc::string::String;

/// Maps a lowercase token to its stem.
pub trait Stemmer {
    fn stem(&self, token: &str) -> String;
}

/// A small suffix-stripping rule table covering plurals and `-ed`/`-ing`.
///
/// Applied to ASCII-alphabetic tokens only, in order:
///
/// | step | rule                                                              |
/// |------|-------------------------------------------------------------------|
/// | 1    | `sses → ss`; `ies → y` (word longer than 4); final `s` dropped unless preceded by `s`, `u` or `i`, word longer than 3 |
/// | 2    | `eed` kept; otherwise `ed` / `ing` dropped when the rest contains a vowel |
/// | 3    | after step 2 only: `at`/`bl`/`iz` → add `e`; doubled consonant other than `l`,`s`,`z` → single; measure 1 ending consonant-vowel-consonant (last not `w`,`x`,`y`) → add `e` |
///
/// `bikes → bike`, `riding → ride`, `hopped → hop`, `hoped → hope`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuffixStemmer;

fn is_consonant(w: &[u8], i: usize) -> bool {
    match w[i] {
        b'a' | b'e' | b'i' | b'o' | b'u' => false,
        b'y' => i == 0 || !is_consonant(w, i - 1),
        _ => true,
    }
}

/// Number of vowel-consonant sequences in `[C](VC)^m[V]`.
fn measure(w: &[u8]) -> usize {
    let mut m = 0;
    let mut prev_vowel = false;
    for i in 0..w.len() {
        let c = is_consonant(w, i);
        if c && prev_vowel {
            m += 1;
        }
        prev_vowel = !c;
    }
    m
}

fn has_vowel(w: &[u8]) -> bool {
    (0..w.len()).any(|i| !is_consonant(w, i))
}

fn ends_cvc(w: &[u8]) -> bool {
    let n = w.len();
    n >= 3
        && is_consonant(w, n - 3)
        && !is_consonant(w, n - 2)
        && is_consonant(w, n - 1)
        && !matches!(w[n - 1], b'w' | b'x' | b'y')
}

impl Stemmer for SuffixStemmer {
    fn stem(&self, token: &str) -> String {
        if !token.bytes().all(|b| b.is_ascii_lowercase()) {
            return token.into();
        }
        let mut w: String = token.into();
        if w.ends_with("sses") {
            w.truncate(w.len() - 2);
        } else if w.ends_with("ies") && w.len() > 4 {
            w.truncate(w.len() - 3);
            w.push('y');
        } else if w.len() > 3
            && w.ends_with('s')
            && !w.ends_with("ss")
            && !w.ends_with("us")
            && !w.ends_with("is")
        {
            w.pop();
        }

        if w.ends_with("eed") {
            return w;
        }
        let suffix = if w.ends_with("ed") {
            2
        } else if w.ends_with("ing") {
            3
        } else {
            return w;
        };
        if !has_vowel(&w.as_bytes()[..w.len() - suffix]) {
            return w;
        }
        w.truncate(w.len() - suffix);
        let b = w.as_bytes();
        let n = b.len();
        if w.ends_with("at") || w.ends_with("bl") || w.ends_with("iz") {
            w.push('e');
        } else if n >= 2
            && b[n - 1] == b[n - 2]
            && is_consonant(b, n - 1)
            && !matches!(b[n - 1], b'l' | b's' | b'z')
        {
            w.pop();
        } else if measure(b) == 1 && ends_cvc(b) {
            w.push('e');
        }
        w
    }
}
