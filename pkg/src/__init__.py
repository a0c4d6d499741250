"""二维 Dirichlet 特征值形状演算工具箱"""
__version__ = "1.0.0"
