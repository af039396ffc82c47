"""pyextremal tests"""
