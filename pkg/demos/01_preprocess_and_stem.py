"""Text preprocessing walkthrough: raw publication text to clean tokens.

The pipeline order is fixed: lowercase -> strip non-alphabetic characters
-> split -> drop short tokens -> drop stopwords -> optionally stem.
"""

from dilifilter import PrepConfig, preprocess, stem

raw = ("Drug-Induced Liver Injury: 3 confirmed cases of hepatotoxicity "
       "after overdosing (1992-2014)!")
print("raw text:")
print(" ", raw)

# without stemming: tokens are plain lowercase words
plain = preprocess(raw, PrepConfig(stemming=False))
print("\ntokens, stemming off:")
print(" ", plain)

# stemming collapses inflected forms; note hepatotoxicity -> hepatotox
stemmed = preprocess(raw, PrepConfig(stemming=True))
print("\ntokens, stemming on:")
print(" ", stemmed)

print("\nselected stems:")
for word in ("hepatotoxicity", "hepatotoxic", "injuries", "dosing",
             "caresses", "liver"):
    print(f"  {word:16s} -> {stem(word)}")

# stemming is a model hyperparameter: inflected forms collapse, the
# vocabulary shrinks, and overfitting risk drops with it
inflected = ("Injury, injuries and the injured: hepatotoxic reactions, "
             "hepatotoxicity reacting to doses dosed while dosing")
vocab_off = set(preprocess(inflected, PrepConfig(stemming=False)))
vocab_on = set(preprocess(inflected, PrepConfig(stemming=True)))
print(f"\n{inflected!r}")
print(f"distinct tokens: {len(vocab_off)} unstemmed -> {len(vocab_on)} stemmed")
print(" ", sorted(vocab_on))
