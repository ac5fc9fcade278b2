import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'followmotif.settings')
django.setup()
