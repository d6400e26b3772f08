/// Lowercases and splits on every non-alphanumeric character. Digits are kept.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .map(|word| {
            word.chars()
                .flat_map(char::to_lowercase)
                .filter(|c| c.is_alphanumeric())
                .collect::<String>()
        })
        .filter(|token| !token.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowercases_and_drops_punctuation() {
        assert_eq!(tokenize("In information retrieval,"), ["in", "information", "retrieval"]);
    }

    #[test]
    fn hyphen_splits() {
        assert_eq!(tokenize("IBM-360"), ["ibm", "360"]);
    }

    #[test]
    fn blank() {
        assert!(tokenize("   ").is_empty());
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn keeps_non_ascii_letters() {
        assert_eq!(tokenize("Déjà-vu ÜBER"), ["déjà", "vu", "über"]);
    }
}
