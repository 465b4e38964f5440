"""Nichols algebras over twisted Yetter-Drinfeld categories of abelian groups, their reflections, Cartan graphs, real roots and Tits cones."""
