"""Regenerates porter_oracle.tsv from NLTK's PorterStemmer in ORIGINAL_ALGORITHM mode.

Usage: python3 gen_porter_oracle.py words.txt > porter_oracle.tsv
"""
import re
import sys

from nltk.stem.porter import PorterStemmer

stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)
words = set()
for line in open(sys.argv[1], encoding="utf-8"):
    for w in re.findall(r"[a-z]+", line.lower()):
        words.add(w)
for w in sorted(words):
    print(f"{w}\t{stemmer.stem(w, to_lowercase=False)}")
