use kgrec_core::textprep::{preprocess, tokenize, Part, Stoplist};
use proptest::prelude::*;

proptest! {
    #[test]
    fn processed_tokens_are_clean(text in "\\PC{0,200}") {
        let stoplist = Stoplist::english();
        let doc = preprocess("d", Part::P1, &text, &stoplist);
        for t in doc.tokens() {
            prop_assert!(!t.is_empty());
            prop_assert!(!stoplist.contains(t), "stopword {t:?} survived");
            prop_assert!(t.chars().all(|c| c.is_alphanumeric() || c == '-'), "{t:?}");
            prop_assert_eq!(t.to_lowercase(), t);
        }
    }

    #[test]
    fn tokenize_is_lowercase_and_idempotent(text in "[a-zA-Z0-9 .,;!?-]{0,120}") {
        let tokens = tokenize(&text);
        let again = tokenize(&tokens.join(" "));
        prop_assert_eq!(&again, &tokens);
        prop_assert!(tokens.iter().all(|t| t.to_lowercase() == *t));
    }

    #[test]
    fn preprocessing_is_deterministic(text in "\\PC{0,120}") {
        let s = Stoplist::english();
        prop_assert_eq!(preprocess("d", Part::P2, &text, &s), preprocess("d", Part::P2, &text, &s));
    }
}
