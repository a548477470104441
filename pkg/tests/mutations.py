"""Random text mutations for parser fuzzing."""

import re

ALPHABET = '():"^#<>=_-:. \n\tabcXYZ019@\\'
TOKEN_RE = re.compile(r'\s+|"[^"]*"|<[^>]*>|[()]|[^\s()"]+')


def _tokens(text):
    return TOKEN_RE.findall(text)


def mutate(rng, text):
    """Apply one to three random edits to ``text``."""
    for _ in range(rng.randint(1, 3)):
        op = rng.randrange(8)
        n = len(text)
        i = rng.randrange(n + 1) if n else 0
        if op == 0 and n:
            text = text[:i] + text[i + 1:]
        elif op == 1:
            text = text[:i] + rng.choice(ALPHABET) + text[i:]
        elif op == 2 and n:
            j = min(n, i + rng.randint(1, 40))
            text = text[:i] + text[j:]
        elif op == 3 and n:
            j = min(n, i + rng.randint(1, 40))
            k = rng.randrange(n + 1)
            text = text[:k] + text[i:j] + text[k:]
        elif op == 4:
            text = text[:i]
        elif op == 5:
            toks = _tokens(text)
            if len(toks) > 1:
                a, b = rng.randrange(len(toks)), rng.randrange(len(toks))
                toks[a], toks[b] = toks[b], toks[a]
                text = "".join(toks)
        elif op == 6:
            toks = _tokens(text)
            if toks:
                rng.shuffle(toks)
                text = "".join(toks)
        elif n:
            text = text[:i] + chr(rng.randrange(0x20, 0x3000)) + text[i + 1:]
    return text
