"""Run both non-Hopf elimination chains and print each step's verdict."""

from bihcheck import hopfderive

for cert in (hopfderive.chain_case1(), hopfderive.chain_case2()):
    print(f"== {cert.name}: {'ok' if cert.ok else 'failed at ' + cert.first_failure.name}")
    for step in cert.steps:
        mark = "ok  " if step.ok else "FAIL"
        print(f"  {mark} {step.name:<28} {step.note or ''}")
