"""Frame calculation for ruled hypersurfaces in small dimensions."""

from bihcheck import framecalc

for n in (2, 3, 5):
    v = framecalc.ruled_scenario(n)
    print(f"n={n}: {v.verdict}")
    for step in v.certificate.steps:
        print(f"    {'ok  ' if step.ok else 'FAIL'} {step.name}")
