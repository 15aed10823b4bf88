"""Factor a small number step by step, then with the one-call driver.

Walks N = 15 with base y = 7 through the four stages by hand so the
intermediate objects are visible, and closes with factor() doing the
same loop unattended.
"""

from shorent.shor import ShorInstance, factor, postprocess, preprocess, run_qft
from shorent.statevector import measure_subregister

N, y = 15, 7

instance = ShorInstance(N, y)
print(f"N = {N}, y = {y}: register of L = {instance.L} qubits, q = {instance.q}")

# stage 1: modular exponentiation + auxiliary measurement
pre = preprocess(instance, rng_seed=11)
print(f"auxiliary outcome z = {pre.z} leaves a comb with shift l = {pre.l},")
print(f"period r = {pre.r}, {pre.support_count} support points")

# stage 2: Fourier transform of the collapsed register
transformed = run_qft(pre.state)

# stage 3: read out the main register
outcome, _ = measure_subregister(transformed, range(1, instance.L + 1), rng_seed=13)
c = int("".join(map(str, outcome)), 2)
print(f"measured index c = {c}")

# stage 4: continued fractions + order check
post = postprocess(instance, c)
print(f"postprocess: status = {post.status}, convergent = {post.convergent}")
if post.factors:
    p, q = post.factors
    print(f"recovered {N} = {p} x {q}")
else:
    print("this draw was unlucky; the driver below just retries")

print()
result = factor(N, rng_seed=1)
print(f"factor({N}) after {len(result.attempts)} attempt(s): {result.factors}")
for a in result.attempts:
    print(f"  y={a['y']} c={a['c']} status={a['status']}")
