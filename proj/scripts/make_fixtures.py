#!/usr/bin/env python3
"""Regenerate the synthetic fixtures in fixtures/.

Deterministic: the same script always writes byte-identical files.

English uses IPA with one code point per segment.  Frequencies are placed
on a log scale from 1 to 10,000 so that the 20 log-spaced frequency bins
used by the growth experiments have a known composition: the top bins are
small (every child sees them in full), the lower bins hold more words than
a child samples from them.
"""

import math
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures"
BINS = 20
F_MIN, F_MAX = 1.0, 10000.0

# ----------------------------------------------------------------- English

VOICELESS = ["p", "k", "f", "θ", "s", "ʃ", "ʧ"]
VOICED = ["b", "g", "v", "ð", "z", "ʒ", "ʤ", "m", "n", "l", "r"]
OPEN_VOWELS = ["e", "u", "ɑ", "ɔ"]
ALVEOLAR = ["t", "d"]
SIBILANTS = {"s", "z", "ʃ", "ʒ", "ʧ", "ʤ"}
ONSETS = ["p", "b", "t", "d", "k", "g", "f", "v", "s", "ʃ", "m", "n", "l", "r", "w", "h",
          "ʧ", "ʤ", "pl", "bl", "kl", "gl", "fl", "sl", "pr", "br", "tr", "dr", "kr",
          "gr", "fr", "st", "sp", "sk", "sw", "sn", "sm", "θr", "ʃr"]
VOWELS = ["æ", "ɑ", "ɛ", "ʌ", "ɔ", "u", "e", "ʊ"]

# Past-tense irregulars.  Two families share a change and a lemma shape so
# that an unseen member is guessed correctly by analogy to a seen one.
SINGLETONS = [("go", "wɛnt"), ("hæv", "hæd"), ("kʌm", "kem"), ("tek", "tʊk"),
              ("gɪv", "gev"), ("si", "sɔ"), ("du", "dɪd"), ("ræn", "rʌn")]
FAMILY_ING = [(l, l[:-2] + "æŋ") for l in ["sɪŋ", "rɪŋ", "wɪŋ", "dɪŋ", "kɪŋ", "lɪŋ"]]
FAMILY_LO = [(l, l[:-1] + "u") for l in ["blo", "flo", "glo", "slo", "klo", "plo"]]
TEST_IRREGULAR = [("ʃɪŋ", "ʃæŋ"), ("splo", "splu")]
PLURAL_IRREGULAR = [("maʊs", "maɪs"), ("fʊt", "fit"), ("mæn", "mɛn")]


def past_suffix(lemma):
    last = lemma[-1]
    if last in ALVEOLAR:
        return "ɪd"
    return "t" if last in VOICELESS else "d"


def plural_suffix(lemma):
    last = lemma[-1]
    if last in SIBILANTS:
        return "ɪz"
    return "s" if last in ("p", "t", "k", "f", "θ") else "z"


def freq_in_bin(rng, b):
    lo, hi = math.log(F_MIN), math.log(F_MAX)
    width = (hi - lo) / BINS
    x = lo + width * (b + 0.1 + 0.8 * rng.random())
    return round(math.exp(x), 2)


class Lexicon:
    def __init__(self, rng):
        self.rng = rng
        reserved = [l for l, _ in SINGLETONS + FAMILY_ING + FAMILY_LO + TEST_IRREGULAR]
        reserved += [l for l, _ in PLURAL_IRREGULAR]
        self.used = set(reserved)

    def word(self, codas):
        while True:
            w = self.rng.choice(ONSETS) + self.rng.choice(VOWELS) + self.rng.choice(codas)
            if w not in self.used:
                self.used.add(w)
                return w

    def ending_in(self, final, vowel=True):
        while True:
            w = self.rng.choice(ONSETS) + (self.rng.choice(VOWELS) if vowel else "") + final
            if w not in self.used:
                self.used.add(w)
                return w

    def open_word(self):
        while True:
            w = self.rng.choice(ONSETS) + self.rng.choice(OPEN_VOWELS)
            if w not in self.used:
                self.used.add(w)
                return w


def english():
    rng = random.Random(20210701)
    lex = Lexicon(rng)
    rows = []  # (lemma, tag, form, freq)

    def past(kind):
        if kind == "t":
            l = lex.word(VOICELESS)
        elif kind == "id":
            l = lex.word(ALVEOLAR)
        elif rng.random() < 0.2:
            l = lex.open_word()
        else:
            l = lex.word(VOICED)
        return l, "past", l + past_suffix(l)

    def plural():
        l = lex.word(VOICELESS + VOICED) if rng.random() > 0.1 else lex.open_word()
        return l, "plural", l + plural_suffix(l)

    def progressive():
        l = lex.word(VOICELESS + VOICED + ALVEOLAR)
        return l, "progressive", l + "ɪŋ"

    def put(b, item):
        rows.append((*item, freq_in_bin(rng, b)))

    # Bin 19: irregular past tenses only (no regular past yet), plurals, progressives.
    top = BINS - 1
    for l, f in SINGLETONS + FAMILY_ING[:2] + FAMILY_LO[:2]:
        put(top, (l, "past", f))
    for l, f in PLURAL_IRREGULAR:
        put(top, (l, "plural", f))
    for _ in range(14):
        put(top, plural())
    for _ in range(12):
        put(top, progressive())

    # Bin 18: enough voiced-final regulars for -d to be tolerable over all past
    # tenses, some sharing the final segment of an irregular family.
    for _ in range(26):
        put(top - 1, past("d"))
    for final in ("ŋ", "o"):
        for _ in range(5):
            l = lex.ending_in(final, vowel=final != "o")
            put(top - 1, (l, "past", l + "d"))
    for _ in range(6):
        put(top - 1, plural())
    for _ in range(6):
        put(top - 1, progressive())

    # Bins 17..14: the remaining family members arrive one per family per bin.
    for i, b in enumerate(range(top - 2, top - 6, -1)):
        put(b, (FAMILY_ING[2 + i][0], "past", FAMILY_ING[2 + i][1]))
        put(b, (FAMILY_LO[2 + i][0], "past", FAMILY_LO[2 + i][1]))
        for _ in range(12):
            put(b, past("t"))
        for _ in range(8):
            put(b, past("d"))
        for _ in range(6):
            put(b, past("id"))
        for _ in range(10):
            put(b, plural())
        for _ in range(8):
            put(b, progressive())

    # Bins 13..0: larger than a child's per-bin sample.
    for b in range(top - 6, -1, -1):
        for _ in range(20):
            put(b, past("t"))
        for _ in range(26):
            put(b, past("d"))
        for _ in range(8):
            put(b, past("id"))
        for _ in range(26):
            put(b, plural())
        for _ in range(18):
            put(b, progressive())

    # Pin the frequency range so bin edges do not depend on the draw.
    rows[0] = rows[0][:3] + (F_MAX,)
    rows[-1] = rows[-1][:3] + (F_MIN,)

    test = []
    for kind in ("t", "d", "id"):
        for _ in range(30):
            l, tag, f = past(kind)
            test.append((l, tag, f, 1.0))
    for _ in range(40):
        test.append((*plural(), 1.0))
    for _ in range(30):
        test.append((*progressive(), 1.0))
    for l, f in TEST_IRREGULAR:
        test.append((l, "past", f, 1.0))
    return rows, test


# ------------------------------------------------------------------ German

G_ONSETS = ["b", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s", "t", "w", "z",
            "bl", "br", "dr", "fl", "fr", "gl", "gr", "kl", "kn", "kr", "pl", "pr",
            "schl", "schm", "schn", "schr", "schw", "sp", "st", "str", "tr", "zw"]
G_VOWELS = ["a", "e", "i", "o", "u", "au", "ei", "ie"]
# Masculine and neuter -e nouns never end in d or t; those finals belong to -er.
G_CODAS_E = ["ng", "rm", "rk", "lm", "ch", "g", "b", "f", "m", "n", "l", "r", "s", "sch", "z"]
G_CODAS_ER = ["d", "t", "ld"]
G_CODAS_NEUT_E = ["r", "l", "n", "m", "f", "g", "s", "k"]
FEM_EN_ENDINGS = ["ung", "heit", "keit", "schaft", "ion", "ur", "ei"]
# -s: half vowel-final, half scattered over consonant finals and genders.
S_PLURALS = [("auto", "neuter"), ("kino", "neuter"), ("oma", "feminine"), ("sofa", "neuter"),
             ("hotel", "neuter"), ("chef", "masculine"), ("park", "masculine"), ("team", "neuter")]


def german():
    rng = random.Random(19970512)
    used = {l for l, _ in S_PLURALS}

    def fresh(make):
        while True:
            w = make()
            if w not in used:
                used.add(w)
                return w

    def syl(codas):
        return rng.choice(G_ONSETS) + rng.choice(G_VOWELS) + rng.choice(codas)

    rows = []

    def add(lemma, gender, form, mu=2.5):
        f = round(math.exp(rng.gauss(mu, 1.3)), 2)
        rows.append((lemma, gender, form, max(f, 0.5)))

    # -(e)n: 250
    for _ in range(170):
        l = fresh(lambda: rng.choice(G_ONSETS) + rng.choice(G_VOWELS) + rng.choice(
            ["ch", "g", "m", "mp", "nd", "nk", "ss", "st", "ll", "t", "ck", "s", "ts"]) + "e")
        add(l, "feminine", l + "n")
    for _ in range(68):
        l = fresh(lambda: syl(["", "r", "l", "n"]) + rng.choice(FEM_EN_ENDINGS))
        add(l, "feminine", l + "en")
    for _ in range(12):
        l = fresh(lambda: rng.choice(G_ONSETS) + rng.choice(G_VOWELS) + rng.choice(["ff", "g", "s"]) + "e")
        add(l, "masculine", l + "n")
    # -e: 109
    for _ in range(92):
        l = fresh(lambda: syl(G_CODAS_E))
        add(l, "masculine", l + "e")
    for _ in range(17):
        l = fresh(lambda: syl(G_CODAS_NEUT_E))
        add(l, "neuter", l + "e")
    # -∅: 60
    for _ in range(30):
        l = fresh(lambda: rng.choice(G_ONSETS) + rng.choice(G_VOWELS) + rng.choice(["t", "ch", "g", "ss"]) + "er")
        add(l, "masculine", l)
    for _ in range(18):
        l = fresh(lambda: rng.choice(G_ONSETS) + rng.choice(G_VOWELS) + rng.choice(["g", "b", "t", "ss"]) + "el")
        add(l, rng.choice(["masculine", "neuter"]), l)
    for _ in range(12):
        l = fresh(lambda: rng.choice(G_ONSETS) + rng.choice(G_VOWELS) + "chen")
        add(l, "neuter", l)
    # -er: 15
    for _ in range(15):
        l = fresh(lambda: syl(G_CODAS_ER))
        add(l, "neuter", l + "er")
    # -s: 8, rarer than the rest
    for l, g in S_PLURALS:
        add(l, g, l + "s", mu=1.2)
    rng.shuffle(rows)
    return rows


# Nonce nouns.  R items rhyme with attested noun shapes; NR items have
# onsets or rhymes the lexicon never uses.  Umlauts removed.
STIMULI = [
    ("klonde", "R"), ("pratte", "R"), ("zeilung", "R"), ("mirkeit", "R"), ("bral", "R"),
    ("kach", "R"), ("pisch", "R"), ("spand", "R"), ("klot", "R"), ("fanter", "R"),
    ("munkel", "R"), ("drauchen", "R"),
    ("bneik", "NR"), ("bnaupf", "NR"), ("fnahf", "NR"), ("fneik", "NR"), ("plaupf", "NR"),
    ("pleik", "NR"), ("snauk", "NR"), ("traupf", "NR"), ("pnaupf", "NR"), ("prong", "NR"),
    ("blato", "NR"), ("kremu", "NR"),
]


def write_tsv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for line in header:
            f.write(line + "\n")
        for lemma, tag, form, freq in rows:
            f.write(f"{lemma}\t{tag}\t{form}\t{freq:g}\n")


def main():
    OUT.mkdir(exist_ok=True)
    en, en_test = english()
    write_tsv(OUT / "english.tsv",
              ["# synthetic English inflection (IPA, one code point per segment)",
               "#features: past,plural,progressive"], en)
    write_tsv(OUT / "english_test.tsv",
              ["# held-out English items", "#features: past,plural,progressive"], en_test)
    write_tsv(OUT / "german.tsv",
              ["# synthetic German noun plurals, umlauts removed",
               "#features: feminine,masculine,neuter"], german())
    with open(OUT / "german_stimuli.tsv", "w", encoding="utf-8", newline="\n") as f:
        f.write("# nonce noun\tgender or ?\tR (rhyme) or NR (non-rhyme)\n")
        for i, (lemma, cls) in enumerate(STIMULI):
            f.write(f"{lemma}\t{'?' if i % 6 == 5 else 'neuter'}\t{cls}\n")


if __name__ == "__main__":
    main()
