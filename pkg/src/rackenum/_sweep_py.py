"""Pure-Python orbit sweep, used when the compiled kernel is unavailable."""


def orbit_minima(radices, src, wlut, size):
    """Flag the minimal index of every orbit of a group acting on a mixed-radix space.

    ``src[f][j]`` is the slot whose digit feeds slot ``j`` under action ``f``
    and ``wlut[f][j][d]`` is the weighted contribution of that digit to the
    image index.  Returns a bytearray with 1 at orbit minima.
    """
    size = int(size)
    k = len(radices)
    radices = [int(r) for r in radices]
    actions = [
        [(int(src[f][j]), [int(v) for v in wlut[f][j]]) for j in range(k)]
        for f in range(len(src))
    ]
    flags = bytearray(b"\x01") * size
    digits = [0] * k
    for i in range(size):
        if flags[i]:
            for act in actions:
                p = 0
                for s, lut in act:
                    p += lut[digits[s]]
                if p > i:
                    flags[p] = 0
        j = k - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < radices[j]:
                break
            digits[j] = 0
            j -= 1
    return flags
