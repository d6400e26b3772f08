//! Porter's suffix-stripping stemmer, following the reference implementation
//! Martin Porter distributes (including its `bli`/`logi` step 2 rules).
//!
//! Works on lowercase ASCII words. Anything else, and words of two letters or
//! fewer, is returned unchanged.

pub fn stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|b| b.is_ascii_lowercase()) {
        return word.to_string();
    }
    let mut w = Word {
        b: word.as_bytes().to_vec(),
    };
    w.step1ab();
    w.step1c();
    w.step2();
    w.step3();
    w.step4();
    w.step5();
    // Only ASCII bytes are ever written.
    String::from_utf8(w.b).expect("ascii")
}

struct Word {
    b: Vec<u8>,
}

impl Word {
    fn len(&self) -> usize {
        self.b.len()
    }

    fn is_consonant(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.is_consonant(i - 1),
            _ => true,
        }
    }

    /// Number of vowel-consonant sequences in `b[..len]`, the `m` of [C](VC)^m[V].
    fn measure(&self, len: usize) -> usize {
        let mut i = 0;
        while i < len && self.is_consonant(i) {
            i += 1;
        }
        let mut m = 0;
        loop {
            while i < len && !self.is_consonant(i) {
                i += 1;
            }
            if i >= len {
                return m;
            }
            while i < len && self.is_consonant(i) {
                i += 1;
            }
            m += 1;
        }
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.is_consonant(i))
    }

    fn double_consonant(&self, len: usize) -> bool {
        len >= 2 && self.b[len - 1] == self.b[len - 2] && self.is_consonant(len - 1)
    }

    /// consonant-vowel-consonant ending `b[..len]`, last consonant not w, x or y.
    fn cvc(&self, len: usize) -> bool {
        len >= 3
            && self.is_consonant(len - 1)
            && !self.is_consonant(len - 2)
            && self.is_consonant(len - 3)
            && !matches!(self.b[len - 1], b'w' | b'x' | b'y')
    }

    /// Length of the stem left after removing `suffix`, if the word ends with it.
    fn ends(&self, suffix: &str) -> Option<usize> {
        self.b
            .ends_with(suffix.as_bytes())
            .then(|| self.len() - suffix.len())
    }

    fn set_to(&mut self, stem: usize, replacement: &str) {
        self.b.truncate(stem);
        self.b.extend_from_slice(replacement.as_bytes());
    }

    /// Replaces `suffix` with `replacement` when the stem has m > 0.
    /// Returns true when the suffix matched, whether or not it was replaced.
    fn replace_if_measured(&mut self, suffix: &str, replacement: &str) -> bool {
        match self.ends(suffix) {
            Some(stem) => {
                if self.measure(stem) > 0 {
                    self.set_to(stem, replacement);
                }
                true
            }
            None => false,
        }
    }

    fn step1ab(&mut self) {
        if self.b.last() == Some(&b's') {
            if let Some(stem) = self.ends("sses") {
                self.set_to(stem, "ss");
            } else if let Some(stem) = self.ends("ies") {
                self.set_to(stem, "i");
            } else if self.b[self.len() - 2] != b's' {
                self.b.pop();
            }
        }
        if let Some(stem) = self.ends("eed") {
            if self.measure(stem) > 0 {
                self.b.pop();
            }
            return;
        }
        let stem = match self.ends("ed").or_else(|| self.ends("ing")) {
            Some(stem) if self.has_vowel(stem) => stem,
            _ => return,
        };
        self.b.truncate(stem);
        if let Some(s) = self.ends("at") {
            self.set_to(s, "ate");
        } else if let Some(s) = self.ends("bl") {
            self.set_to(s, "ble");
        } else if let Some(s) = self.ends("iz") {
            self.set_to(s, "ize");
        } else if self.double_consonant(self.len()) {
            if !matches!(self.b[self.len() - 1], b'l' | b's' | b'z') {
                self.b.pop();
            }
        } else if self.measure(self.len()) == 1 && self.cvc(self.len()) {
            self.b.push(b'e');
        }
    }

    fn step1c(&mut self) {
        if let Some(stem) = self.ends("y") {
            if self.has_vowel(stem) {
                self.b[stem] = b'i';
            }
        }
    }

    fn apply_first(&mut self, rules: &[(&str, &str)]) {
        for (suffix, replacement) in rules {
            if self.replace_if_measured(suffix, replacement) {
                return;
            }
        }
    }

    fn step2(&mut self) {
        if self.len() < 2 {
            return;
        }
        let rules: &[(&str, &str)] = match self.b[self.len() - 2] {
            b'a' => &[("ational", "ate"), ("tional", "tion")],
            b'c' => &[("enci", "ence"), ("anci", "ance")],
            b'e' => &[("izer", "ize")],
            b'l' => &[("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")],
            b'o' => &[("ization", "ize"), ("ation", "ate"), ("ator", "ate")],
            b's' => &[("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")],
            b't' => &[("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")],
            b'g' => &[("logi", "log")],
            _ => return,
        };
        self.apply_first(rules);
    }

    fn step3(&mut self) {
        let rules: &[(&str, &str)] = match self.b[self.len() - 1] {
            b'e' => &[("icate", "ic"), ("ative", ""), ("alize", "al")],
            b'i' => &[("iciti", "ic")],
            b'l' => &[("ical", "ic"), ("ful", "")],
            b's' => &[("ness", "")],
            _ => return,
        };
        self.apply_first(rules);
    }

    fn step4(&mut self) {
        if self.len() < 2 {
            return;
        }
        let suffixes: &[&str] = match self.b[self.len() - 2] {
            b'a' => &["al"],
            b'c' => &["ance", "ence"],
            b'e' => &["er"],
            b'i' => &["ic"],
            b'l' => &["able", "ible"],
            b'n' => &["ant", "ement", "ment", "ent"],
            b'o' => &["ion", "ou"],
            b's' => &["ism"],
            b't' => &["ate", "iti"],
            b'u' => &["ous"],
            b'v' => &["ive"],
            b'z' => &["ize"],
            _ => return,
        };
        let Some((suffix, stem)) = suffixes.iter().find_map(|s| self.ends(s).map(|stem| (*s, stem))) else {
            return;
        };
        // -ion is only removed after s or t.
        if suffix == "ion" && !(stem > 0 && matches!(self.b[stem - 1], b's' | b't')) {
            return;
        }
        if self.measure(stem) > 1 {
            self.b.truncate(stem);
        }
    }

    fn step5(&mut self) {
        if self.b.last() == Some(&b'e') {
            let stem = self.len() - 1;
            let m = self.measure(stem);
            if m > 1 || (m == 1 && !self.cvc(stem)) {
                self.b.pop();
            }
        }
        let len = self.len();
        if self.b[len - 1] == b'l' && self.double_consonant(len) && self.measure(len) > 1 {
            self.b.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::stem;

    #[test]
    fn classic_rule_examples() {
        let cases = [
            ("caresses", "caress"),
            ("ponies", "poni"),
            ("ties", "ti"),
            ("caress", "caress"),
            ("cats", "cat"),
            ("feed", "feed"),
            ("agreed", "agre"),
            ("plastered", "plaster"),
            ("bled", "bled"),
            ("motoring", "motor"),
            ("sing", "sing"),
            ("conflated", "conflat"),
            ("hopping", "hop"),
            ("falling", "fall"),
            ("filing", "file"),
            ("happy", "happi"),
            ("sky", "sky"),
            ("relational", "relat"),
            ("generalization", "gener"),
            ("oscillators", "oscil"),
            ("running", "run"),
            ("archaeology", "archaeolog"),
            ("controll", "control"),
            ("roll", "roll"),
        ];
        for (word, expected) in cases {
            assert_eq!(stem(word), expected, "{word}");
        }
    }

    #[test]
    fn short_and_foreign_words_pass_through() {
        assert_eq!(stem("is"), "is");
        assert_eq!(stem("a1"), "a1");
        assert_eq!(stem("café"), "café");
    }
}
