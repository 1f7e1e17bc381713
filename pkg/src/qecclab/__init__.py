"""Simulation of small quantum error-correcting codes."""
