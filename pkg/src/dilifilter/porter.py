"""Porter suffix-stripping stemmer.

Classic five-step rule cascade reducing inflected English words to stems,
e.g. "hepatotoxicity" -> "hepatotox", "caresses" -> "caress". The rules
follow the canonical reference implementation, including its departures
from the original 1980 description: words of length <= 2 are returned
unchanged, "-bli" maps to "-ble" (instead of "-abli" to "-able"), and
"-logi" maps to "-log".

Only lowercase alphabetic input is supported; callers normalize first
(see :func:`dilifilter.textprep.preprocess`).
"""

from functools import lru_cache

__all__ = ["stem"]

_VOWELS = "aeiou"


class _Buffer:
    """Mutable word buffer; ``k`` indexes the last live character and ``j``
    marks the end of the stem left by the most recent suffix match."""

    def __init__(self, word: str):
        self.b = word
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            # y is a consonant at position 0, otherwise only after a vowel
            return i == 0 or not self.cons(i - 1)
        return True

    def measure(self) -> int:
        """Number of vowel-consonant sequences in b[0..j]."""
        i = 0
        while True:
            if i > self.j:
                return 0
            if not self.cons(i):
                break
            i += 1
        i += 1
        n = 0
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def double_cons(self, i: int) -> bool:
        return i > 0 and self.b[i] == self.b[i - 1] and self.cons(i)

    def cvc(self, i: int) -> bool:
        """consonant-vowel-consonant ending at i, last cons not w, x or y;
        used to restore a trailing e on short stems (hop -> hope)."""
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        if s[-1] != self.b[self.k]:
            return False
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != s:
            return False
        self.j = self.k - length
        return True

    def set_suffix(self, s: str) -> None:
        self.b = self.b[: self.j + 1] + s
        self.k = len(self.b) - 1

    def replace_if_measure(self, s: str) -> None:
        if self.measure() > 0:
            self.set_suffix(s)


def _step1ab(w: _Buffer) -> None:
    # plurals and -ed / -ing
    if w.b[w.k] == "s":
        if w.ends("sses"):
            w.k -= 2
        elif w.ends("ies"):
            w.set_suffix("i")
        elif w.b[w.k - 1] != "s":
            w.k -= 1
    if w.ends("eed"):
        if w.measure() > 0:
            w.k -= 1
    elif (w.ends("ed") or w.ends("ing")) and w.vowel_in_stem():
        w.k = w.j
        if w.ends("at"):
            w.set_suffix("ate")
        elif w.ends("bl"):
            w.set_suffix("ble")
        elif w.ends("iz"):
            w.set_suffix("ize")
        elif w.double_cons(w.k):
            if w.b[w.k - 1] not in "lsz":
                w.k -= 1
        elif w.measure() == 1 and w.cvc(w.k):
            w.set_suffix("e")


def _step1c(w: _Buffer) -> None:
    # terminal y -> i when the stem has another vowel
    if w.ends("y") and w.vowel_in_stem():
        w.b = w.b[: w.k] + "i"


_STEP2 = {
    "a": (("ational", "ate"), ("tional", "tion")),
    "c": (("enci", "ence"), ("anci", "ance")),
    "e": (("izer", "ize"),),
    "l": (("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"),
          ("ousli", "ous")),
    "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
    "s": (("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
          ("ousness", "ous")),
    "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
    "g": (("logi", "log"),),
}

_STEP3 = {
    "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
    "i": (("iciti", "ic"),),
    "l": (("ical", "ic"), ("ful", "")),
    "s": (("ness", ""),),
}


def _step2(w: _Buffer) -> None:
    # collapse double suffixes (-ization -> -ize etc.) when measure > 0
    for suffix, repl in _STEP2.get(w.b[w.k - 1], ()):
        if w.ends(suffix):
            w.replace_if_measure(repl)
            return


def _step3(w: _Buffer) -> None:
    for suffix, repl in _STEP3.get(w.b[w.k], ()):
        if w.ends(suffix):
            w.replace_if_measure(repl)
            return


_STEP4 = {
    "a": ("al",),
    "c": ("ance", "ence"),
    "e": ("er",),
    "i": ("ic",),
    "l": ("able", "ible"),
    "n": ("ant", "ement", "ment", "ent"),
    "s": ("ism",),
    "t": ("ate", "iti"),
    "u": ("ous",),
    "v": ("ive",),
    "z": ("ize",),
}


def _step4(w: _Buffer) -> None:
    # strip residual suffixes when the remaining stem has measure > 1
    ch = w.b[w.k - 1]
    if ch == "o":
        if not ((w.ends("ion") and w.b[w.j] in "st") or w.ends("ou")):
            return
    else:
        suffixes = _STEP4.get(ch)
        if suffixes is None or not any(w.ends(s) for s in suffixes):
            return
    if w.measure() > 1:
        w.k = w.j


def _step5(w: _Buffer) -> None:
    # drop a final -e and reduce -ll when the stem is long enough
    w.j = w.k
    if w.b[w.k] == "e":
        a = w.measure()
        if a > 1 or (a == 1 and not w.cvc(w.k - 1)):
            w.k -= 1
    if w.b[w.k] == "l" and w.double_cons(w.k) and w.measure() > 1:
        w.k -= 1


@lru_cache(maxsize=1 << 16)
def stem(token: str) -> str:
    """Return the stem of a lowercase alphabetic token.

    Tokens of length <= 2 are returned unchanged. Stemming already-stemmed
    output is a no-op for the committed reference vocabulary.
    """
    if len(token) <= 2:
        return token
    w = _Buffer(token)
    _step1ab(w)
    _step1c(w)
    _step2(w)
    _step3(w)
    _step4(w)
    _step5(w)
    return w.b[: w.k + 1]
