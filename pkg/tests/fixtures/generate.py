"""Regenerate the JSON fixtures: ``python tests/fixtures/generate.py``."""
from pathlib import Path

import numpy as np

from banach_sylvester import io
from banach_sylvester.algebra import AlgebraDescriptor, AlgebraElement, AlgebraMatrix, matmul
from banach_sylvester.roth import BlockTriangular

HERE = Path(__file__).parent
SCALAR = AlgebraDescriptor.scalar()


def const(rows, desc=SCALAR):
    return AlgebraMatrix.constant(rows, desc)


def save(sub, name, **kw):
    desc = kw.pop("descriptor")
    io.save_problem(HERE / sub / name, io.Problem(descriptor=desc, **kw))


def manufactured(rng, n, m, bw):
    desc = AlgebraDescriptor.wiener(2 * bw)

    def coeffs(shape, scale):
        return {k: np.round(scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)), 3)
                for k in range(-bw, bw + 1)}

    ca, cb = coeffs((n, n), 0.1), coeffs((m, m), 0.1)
    ca[0] = ca[0] + 3 * np.eye(n)
    cb[0] = cb[0] - 3 * np.eye(m)
    a = AlgebraMatrix.from_coefficients(ca, desc)
    b = AlgebraMatrix.from_coefficients(cb, desc)
    x = AlgebraMatrix.from_coefficients(coeffs((n, m), 1.0), desc)
    c = matmul(a, x) - matmul(x, b)
    return desc, a, b, c, x


def main():
    rng = np.random.default_rng(2021)
    save("solvable", "scalar_basic.json", descriptor=SCALAR,
         A=const([[2]]), B=const([[0]]), C=const([[1]]))
    save("solvable", "scalar_3x2.json", descriptor=SCALAR,
         A=const([[4, 1, 0], [0, 5, 1j], [0, 0, 6]]), B=const([[-1, 2], [0, -2]]),
         C=const([[1, 0], [0, 1], [1, 1]]))
    desc, a, b, c, x = manufactured(rng, 2, 2, 2)
    save("solvable", "wiener_manufactured.json", descriptor=desc, A=a, B=b, C=c)
    io.write_json(HERE / "wiener_manufactured.expected.json",
                  {"algebra": io.descriptor_to_json(desc), "X": io.matrix_to_json(x)})
    w1 = AlgebraDescriptor.wiener(1)
    w1_fine = AlgebraDescriptor.wiener(1, grid_size=64)
    geo_a = AlgebraMatrix.from_elements(
        [[AlgebraElement.from_coefficients({0: 2.0, 1: 0.25}, w1)]])
    save("solvable", "wiener_geometric.json", descriptor=w1_fine,
         A=geo_a, B=AlgebraMatrix.zeros(1, 1, w1), C=AlgebraMatrix.identity(1, w1))
    save("solvable", "wiener_zero_c.json", descriptor=desc, A=a, B=b,
         C=AlgebraMatrix.zeros(2, 2, desc))
    ck = AlgebraDescriptor.sampled(5)
    pts = np.linspace(0.0, 1.0, 5)
    save("solvable", "sampled_ck.json", descriptor=ck,
         A=AlgebraMatrix(ck, np.array([[2 + pts, pts], [0 * pts, 3 + pts]])),
         B=AlgebraMatrix(ck, np.array([[-1 - pts]])),
         C=AlgebraMatrix(ck, np.array([[1 + 0 * pts], [pts * pts]])))

    save("overlap", "scalar_overlap.json", descriptor=SCALAR,
         A=const([[0]]), B=const([[0]]), C=const([[1]]))
    save("overlap", "wiener_touching.json", descriptor=w1,
         A=AlgebraMatrix.from_elements([[AlgebraElement.monomial(1, w1)]]),
         B=AlgebraMatrix.identity(1, w1), C=AlgebraMatrix.identity(1, w1))

    save("roth", "two_block_scalar.json", descriptor=SCALAR,
         A=const([[1]]), B=const([[0]]), C=const([[1]]))
    diag = [const([[1]]), const([[2]]), const([[3]])]
    upper = {(0, 1): const([[0.5]]), (0, 2): const([[-1.25]]), (1, 2): const([[2]])}
    save("roth", "three_block_scalar.json", descriptor=SCALAR,
         blocks=BlockTriangular.from_blocks(diag, upper))
    diag = [const([[1, 1], [0, 2]]), const([[2]])]
    save("roth", "touching_blocks.json", descriptor=SCALAR,
         blocks=BlockTriangular.from_blocks(diag, {(0, 1): const([[1], [1]])}))


if __name__ == "__main__":
    main()
