"""Exact tensor calculus for recurrent-like curvature structures."""
