use plagscan::textnorm::tokenize;
use plagscan::translation::{dictionary_translate, translate_document, BilingualDictionary, DictionaryBackend};
use plagscan::{Language, Origin, RawDocument};
use proptest::prelude::*;

fn malay_text() -> impl Strategy<Value = String> {
    let word = prop::sample::select(vec![
        "Saya", "membaca", "buku", "dan", "yang", "pelajar", "plagiat", "Ali", "xyz", "menyalin", "karya", "2024",
    ]);
    let sep = prop::sample::select(vec![" ", ", ", ". ", "! ", "\n", " (", ") "]);
    prop::collection::vec((word, sep), 0..30).prop_map(|parts| parts.into_iter().map(|(w, s)| format!("{w}{s}")).collect())
}

proptest! {
    #[test]
    fn dictionary_translation_invariants(text in malay_text()) {
        let dict = BilingualDictionary::malay_english();
        let out = dictionary_translate(&text, &dict);
        prop_assert_eq!(&dictionary_translate(&text, &dict), &out);

        let input_words = tokenize(&text);
        let output_words = tokenize(&out.text);
        prop_assert_eq!(input_words.len(), output_words.len());
        prop_assert_eq!(out.words, input_words.len());

        let mut untranslated = 0;
        for (src, dst) in input_words.iter().zip(&output_words) {
            match dict.lookup(src) {
                Some(target) => prop_assert_eq!(dst, target),
                None => {
                    untranslated += 1;
                    prop_assert_eq!(dst, src);
                }
            }
        }
        prop_assert_eq!(out.untranslated, untranslated);

        // Non-word characters survive untouched.
        let punct = |s: &str| s.chars().filter(|c| !c.is_alphanumeric()).collect::<String>();
        prop_assert_eq!(punct(&out.text), punct(&text));
    }

    #[test]
    fn identity_for_target_language(text in "[a-zA-Z .,!]{1,60}") {
        prop_assume!(!text.trim().is_empty());
        let doc = RawDocument::new("d", text, Language::En, Origin::SuspectInput).unwrap();
        let backend = DictionaryBackend::new(BilingualDictionary::malay_english());
        let out = translate_document(&doc, Language::En, &backend).unwrap();
        prop_assert_eq!(out.document, doc);
    }
}

#[test]
fn inverse_round_trip_recovers_covered_words() {
    let dict = BilingualDictionary::malay_english();
    let inverse = dict.inverted();
    let english = "Students translate an article and submit it as their own work.";
    let malay = dictionary_translate(english, &inverse);
    let back = dictionary_translate(&malay.text, &dict);
    assert_eq!(tokenize(&back.text), tokenize(english));
}
