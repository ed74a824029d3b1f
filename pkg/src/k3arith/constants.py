# default number of p-adic digits carried by rings, crystals and laws
DEFAULT_PRECISION = 12

# default truncation degree of power series (monomials of total degree < N)
DEFAULT_TRUNCATION = 64

# largest lattice rank for which dense 2^n x 2^n operators are materialized
DENSE_RANK_LIMIT = 12

# largest lattice rank for which the 2^n monomials are flagged one by one
MONOMIAL_RANK_LIMIT = 24

# seed of randomized checks and its environment fallback
DEFAULT_SEED = 0
SEED_ENV_VAR = "K3ARITH_SEED"

# rank of the K3 lattice and the range of finite heights
K3_RANK = 22
MAX_K3_HEIGHT = 10
