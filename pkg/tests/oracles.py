"""Independent integer-list oracles shared by the tests."""


def int_power_product(exp, n_max, step=1):
    """Coefficients of prod_n (1 - q^(step*n))^exp with plain integer lists."""
    c = [1] + [0] * n_max
    n = step
    while n <= n_max:
        for _ in range(abs(exp)):
            if exp > 0:
                for k in range(n_max, n - 1, -1):
                    c[k] -= c[k - n]
            else:
                for k in range(n, n_max + 1):
                    c[k] += c[k - n]
        n += step
    return c


def plane_partitions(n_max):
    """Counts by enumerating rows, each row a partition dominated by the one above."""
    def parts(n, cap_row):
        # partitions of n into at most len(cap_row) parts, dominated entrywise by cap_row
        def rec(i, rem, prev):
            if rem == 0:
                yield ()
                return
            if i >= len(cap_row):
                return
            for v in range(min(rem, prev, cap_row[i]), 0, -1):
                for rest in rec(i + 1, rem - v, v):
                    yield (v,) + rest
        return rec(0, n, n)

    def count(n, above):
        if n == 0:
            return 1
        return sum(count(n - k, row) for k in range(1, n + 1) for row in parts(k, above))

    return [count(n, (n,) * n) for n in range(n_max + 1)]
