import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hom_nambu.settings')
django.setup()
