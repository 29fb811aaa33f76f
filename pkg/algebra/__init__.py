"""Fine-graded monomial algebra and the module class the engine computes with."""
