# Second-order ratio across the zero-coherence family and across coupling strength.
#
# Along p the ratio grows from 0 (singular state) to 1 at the product state,
# p = rho^A_00; scaling gamma rescales f2 and g2 together and leaves it fixed.

from qtransport.app import RunConfig, SweepSpec, cmd_sweep

print(cmd_sweep(RunConfig(scenario="zero_cc", sweep=SweepSpec("p", 0.0, 1.0, 6))))
print(cmd_sweep(RunConfig(scenario="zero_cc", sweep=SweepSpec("gamma", 1.0, 10.0, 2))))
